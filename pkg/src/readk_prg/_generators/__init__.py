"""Recursive and composite pseudorandom generators."""

from readk_prg._generators.composite import (
    CompositeDescriptor,
    CompositeKind,
    PartGenerator,
    SeedLengthReport,
    build_linear_length_generator,
    build_read_k_generator,
    expand_composite,
    expand_composite_many,
    frequency_threshold,
    seed_report,
)
from readk_prg._generators.expander import (
    BASE_SPECTRAL_BOUND,
    ExpanderSpec,
    expander_neighbor,
    power_iteration_second_eigenvalue,
    second_eigenvalue,
    walk_matrix,
)
from readk_prg._generators.hashing import (
    affine_hash,
    gf_multiply,
    irreducible_polynomial,
    is_irreducible,
)
from readk_prg._generators.inw import (
    DEFAULT_TOY_AUX,
    InvalidParamsError,
    InwDescriptor,
    Mode,
    SeedLengthMismatchError,
    build_inw,
    communication_budget,
    expand,
    expand_many,
)
from readk_prg._generators.io import (
    Descriptor,
    DescriptorParseError,
    descriptor_from_dict,
    dump_descriptor,
    load_descriptor,
)

__all__ = [
    "BASE_SPECTRAL_BOUND",
    "DEFAULT_TOY_AUX",
    "CompositeDescriptor",
    "CompositeKind",
    "Descriptor",
    "DescriptorParseError",
    "ExpanderSpec",
    "InvalidParamsError",
    "InwDescriptor",
    "Mode",
    "PartGenerator",
    "SeedLengthMismatchError",
    "SeedLengthReport",
    "affine_hash",
    "build_inw",
    "build_linear_length_generator",
    "build_read_k_generator",
    "communication_budget",
    "descriptor_from_dict",
    "dump_descriptor",
    "expand",
    "expand_composite",
    "expand_composite_many",
    "expand_many",
    "expander_neighbor",
    "frequency_threshold",
    "gf_multiply",
    "irreducible_polynomial",
    "is_irreducible",
    "load_descriptor",
    "power_iteration_second_eigenvalue",
    "second_eigenvalue",
    "seed_report",
    "walk_matrix",
]
