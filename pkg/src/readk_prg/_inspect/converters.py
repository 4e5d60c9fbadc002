"""Converters from corpus entries to Inspect AI samples."""

from typing import Any

from inspect_ai.dataset import Sample

from readk_prg._config import GeneratorSpec, RunConfig
from readk_prg._harness import CorpusProgram
from readk_prg._programs import program_to_dict


def pair_to_sample(
    entry: CorpusProgram,
    generator: GeneratorSpec,
    config: RunConfig,
    method: str = "auto",
) -> Sample:
    """One sample per program and generator recipe.

    The metadata carries everything the ``measure`` solver needs to rebuild
    both sides: the program file contents, the recipe and the run config.

    Args:
        entry: Corpus program and its id.
        generator: Generator recipe.
        config: Run configuration (caps, samples, seeds, defaults).
        method: ``exact``, ``sampled`` or ``auto``.

    Returns:
        Sample: Sample whose id is ``<program id>::<generator name>``.
    """
    B = entry.program
    metadata: dict[str, Any] = {
        "program_id": entry.program_id,
        "program": program_to_dict(B),
        "generator": generator.model_dump(mode="json"),
        "config": config.model_dump(mode="json", exclude={"corpus"}),
        "method": method,
    }
    return Sample(
        id=f"{entry.program_id}::{generator.name}",
        input=(
            f"Measure how well generator {generator.name!r} ({generator.kind}, "
            f"{generator.mode or config.mode}) fools program {entry.program_id} "
            f"(n={B.n}, w={B.w}, length={B.length})."
        ),
        target="PASS",
        metadata=metadata,
    )
