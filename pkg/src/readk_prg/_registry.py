# ruff: noqa: F401
from readk_prg._inspect.scorer import fooling_scorer
from readk_prg._inspect.solver import measure
from readk_prg._inspect.task import fooling_corpus
