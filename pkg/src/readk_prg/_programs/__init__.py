"""Oblivious branching programs: evaluation, restriction and exact counting."""

from readk_prg._programs.builders import (
    NotPowerOfTwoError,
    build_address_function,
    build_constant,
    build_mod_counter,
    build_parity,
    random_obp,
)
from readk_prg._programs.io import (
    ProgramParseError,
    dump_program,
    load_program,
    program_from_dict,
    program_to_dict,
)
from readk_prg._programs.program import (
    DEFAULT_EXHAUSTIVE_CAP,
    AcceptanceResult,
    InputLengthMismatchError,
    InvalidProgramError,
    Layer,
    ObliviousBranchingProgram,
    ReadProfile,
    Restriction,
    acceptance_probability_uniform,
    evaluate,
    evaluate_many,
    is_read_once,
    pad_to_exact_k,
    program_over,
    random_inputs,
    read_profile,
    restrict_program,
    with_width,
)

__all__ = [
    "DEFAULT_EXHAUSTIVE_CAP",
    "AcceptanceResult",
    "InputLengthMismatchError",
    "InvalidProgramError",
    "Layer",
    "NotPowerOfTwoError",
    "ObliviousBranchingProgram",
    "ProgramParseError",
    "ReadProfile",
    "Restriction",
    "acceptance_probability_uniform",
    "build_address_function",
    "build_constant",
    "build_mod_counter",
    "build_parity",
    "dump_program",
    "evaluate",
    "evaluate_many",
    "is_read_once",
    "load_program",
    "pad_to_exact_k",
    "program_from_dict",
    "program_over",
    "program_to_dict",
    "random_inputs",
    "random_obp",
    "read_profile",
    "restrict_program",
    "with_width",
]
