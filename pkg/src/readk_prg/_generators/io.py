"""Descriptor files.

A descriptor is stored with its construction parameters and its full
layout. Loading rebuilds the generator from the parameters and rejects the
file unless the rebuilt layout matches the stored one field for field, so a
loaded descriptor expands exactly like the one that was saved.
"""

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, ValidationError

from readk_prg._generators.composite import (
    CompositeDescriptor,
    CompositeKind,
    build_linear_length_generator,
    build_read_k_generator,
)
from readk_prg._generators.inw import InwDescriptor, Mode, build_inw
from readk_prg._sequences import validate

Descriptor = InwDescriptor | CompositeDescriptor


class DescriptorParseError(ValueError):
    """Raised when a descriptor file is malformed or does not match its parameters."""


class _InwParams(BaseModel):
    model_config = ConfigDict(extra="allow")

    type: Literal["inw"]
    n_out: int
    d: int
    w: int
    eps: float
    mode: Mode
    toy_aux: int


class _CompositeParams(BaseModel):
    model_config = ConfigDict(extra="allow")

    type: Literal["composite"]
    kind: CompositeKind
    n: int
    k: int
    w: int
    eps: float
    mode: Mode
    toy_aux: int
    threshold: int | None = None
    sequence: list[int]


def descriptor_from_dict(data: Any, source: str = "<dict>") -> Descriptor:
    """Rebuild a descriptor and check it against the stored layout.

    Raises:
        DescriptorParseError: On schema errors, invalid parameters, or a
            stored layout that differs from the rebuilt one.
    """
    kind = data.get("type") if isinstance(data, dict) else None
    try:
        if kind == "inw":
            p = _InwParams.model_validate(data)
            rebuilt: Descriptor = build_inw(p.n_out, p.d, p.w, p.eps, p.mode, p.toy_aux)
        elif kind == "composite":
            c = _CompositeParams.model_validate(data)
            elems = [v - 1 for v in c.sequence]
            if c.kind is CompositeKind.READ_K:
                rebuilt = build_read_k_generator(
                    validate(elems, c.n, c.k), c.w, c.eps, c.mode, c.toy_aux
                )
            else:
                rebuilt = build_linear_length_generator(
                    elems, c.n, c.w, c.eps, c.mode, c.toy_aux, c.threshold
                )
        else:
            raise DescriptorParseError(
                f"{source}: 'type' must be 'inw' or 'composite', got {kind!r}"
            )
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise DescriptorParseError(f"{source}: {where}: {first['msg']}") from e
    except ValueError as e:
        if isinstance(e, DescriptorParseError):
            raise
        raise DescriptorParseError(f"{source}: {e}") from e

    expected = rebuilt.to_dict()
    stored = {key: data[key] for key in expected if key in data}
    if stored != expected:
        changed = sorted(key for key in expected if stored.get(key) != expected[key])
        raise DescriptorParseError(
            f"{source}: stored layout differs from the rebuilt one in {changed}"
        )
    return rebuilt


def load_descriptor(path: str | Path) -> Descriptor:
    """Load a descriptor file, also accepting a ``build-gen`` output with a ``descriptor`` key."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DescriptorParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if isinstance(data, dict) and "descriptor" in data:
        data = data["descriptor"]
    return descriptor_from_dict(data, source=str(path))


def dump_descriptor(G: Descriptor, path: str | Path, extra: dict[str, Any] | None = None) -> None:
    """Write ``G``; ``extra`` keys (provenance, seed report) go alongside it."""
    payload: dict[str, Any] = dict(extra or {})
    payload["descriptor"] = G.to_dict()
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
