"""Pseudorandom generators for read-k and linear-length oblivious branching programs."""

# ruff: noqa: F401, F403
from readk_prg._config import (
    ConfigError,
    CorpusConfig,
    GeneratorSpec,
    ProgramSpec,
    RunConfig,
    desk_corpus,
    load_run_config,
    provenance,
    toy_regression_corpus,
)
from readk_prg._generators import *
from readk_prg._harness import *
from readk_prg._inspect.scorer import fooling_scorer
from readk_prg._inspect.solver import measure as measure_solver
from readk_prg._inspect.task import fooling_corpus
from readk_prg._programs import *
from readk_prg._sequences import *
