"""JSON program files.

Layer variables are 1-based in files, like sequence files; states are
0-based. Every transition is spelled out, there are no defaults.
"""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, ValidationError

from readk_prg._programs.program import (
    InvalidProgramError,
    Layer,
    ObliviousBranchingProgram,
)


class ProgramParseError(ValueError):
    """Raised when a program file cannot be parsed or validated."""


class _LayerModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    var: int
    t0: list[int]
    t1: list[int]


class ProgramFile(BaseModel):
    """Schema of a program file."""

    model_config = ConfigDict(extra="forbid")

    n: int
    w: int
    layers: list[_LayerModel]
    start: int
    accepting: list[int]


def program_to_dict(B: ObliviousBranchingProgram) -> dict[str, Any]:
    """The JSON layout of a program, with 1-based variables."""
    return {
        "n": B.n,
        "w": B.w,
        "layers": [
            {"var": layer.var + 1, "t0": list(layer.t0), "t1": list(layer.t1)}
            for layer in B.layers
        ],
        "start": B.start,
        "accepting": sorted(B.accepting),
    }


def program_from_dict(data: Any, source: str = "<dict>") -> ObliviousBranchingProgram:
    """Validate a decoded program file.

    Raises:
        ProgramParseError: With the failing field path, or the program-level error.
    """
    try:
        parsed = ProgramFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ProgramParseError(f"{source}: {where}: {first['msg']}") from e
    try:
        return ObliviousBranchingProgram(
            n=parsed.n,
            w=parsed.w,
            layers=tuple(
                Layer(var=layer.var - 1, t0=tuple(layer.t0), t1=tuple(layer.t1))
                for layer in parsed.layers
            ),
            start=parsed.start,
            accepting=frozenset(parsed.accepting),
        )
    except InvalidProgramError as e:
        raise ProgramParseError(f"{source}: {e}") from e


def load_program(path: str | Path) -> ObliviousBranchingProgram:
    """Read a program file.

    Raises:
        ProgramParseError: On malformed JSON or an invalid program, with the
            file position or field path.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ProgramParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    return program_from_dict(data, source=str(path))


def dump_program(B: ObliviousBranchingProgram, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(program_to_dict(B), indent=2) + "\n", encoding="utf-8"
    )
