"""Inspect AI task over a distinguisher corpus."""

from pathlib import Path

from inspect_ai import Task, task

from readk_prg._config import desk_corpus, load_run_config
from readk_prg._harness import build_programs
from readk_prg._inspect.converters import pair_to_sample
from readk_prg._inspect.scorer import fooling_scorer
from readk_prg._inspect.solver import measure


@task
def fooling_corpus(
    config_path: str | Path | None = None,
    method: str | None = None,
    rng_seed: int | None = None,
    samples: int | None = None,
) -> Task:
    """One sample per program and generator recipe of a corpus.

    Args:
        config_path: YAML run configuration; its ``corpus`` section lists the
            programs and generators. Without one (or without a ``corpus``
            section) the desk-scale corpus is used.
        method: ``exact``, ``sampled`` or ``auto``; defaults to the corpus setting.
        rng_seed: Overrides the configured seed.
        samples: Overrides the configured sample count.

    Returns:
        Task: Task whose solver measures and whose scorer checks ``eps``.
    """
    config = load_run_config(config_path, {"rng_seed": rng_seed, "samples": samples})
    corpus = config.corpus or desk_corpus()
    chosen = method or corpus.method
    dataset = [
        pair_to_sample(entry, generator, config, chosen)
        for j, spec in enumerate(corpus.programs)
        for entry in build_programs(spec, j, config.rng_seed)
        for generator in corpus.generators
    ]
    return Task(dataset=dataset, solver=measure(), scorer=fooling_scorer())
