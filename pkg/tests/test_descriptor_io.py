"""Tests for descriptor files."""

import json
from pathlib import Path

import pytest
from readk_prg._generators import (
    DescriptorParseError,
    Mode,
    build_inw,
    build_linear_length_generator,
    build_read_k_generator,
    descriptor_from_dict,
    dump_descriptor,
    load_descriptor,
)
from readk_prg._sequences import two_pass


@pytest.mark.parametrize(
    "G",
    [
        build_inw(16, 4, 4, 0.1, Mode.HASH),
        build_inw(8, 2, 4, 0.1, Mode.EXPANDER),
        build_read_k_generator(two_pass([2, 0, 3, 1]), 4, 0.1, Mode.TOY, toy_aux=2),
        build_linear_length_generator([0, 0, 0, 1, 2, 3, 1, 2], 4, 4, 0.1, threshold=2),
    ],
)
def test_dump_and_load(tmp_path: Path, G):
    """Test a dumped descriptor loads back equal and expands identically."""
    path = tmp_path / "descriptor.json"

    dump_descriptor(G, path, extra={"provenance": {"tool": "readk-prg"}})
    loaded = load_descriptor(path)

    assert loaded == G
    assert [loaded.expand(x) for x in range(8)] == [G.expand(x) for x in range(8)]
    assert json.loads(path.read_text())["provenance"] == {"tool": "readk-prg"}


def test_tampered_layout_rejected():
    """Test a stored layout that differs from the rebuilt one is rejected."""
    data = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2).to_dict()
    data["s"] = 99

    with pytest.raises(DescriptorParseError, match=r"differs .*\['s'\]"):
        descriptor_from_dict(data, source="g.json")


def test_unknown_type_rejected():
    """Test the type tag is required."""
    with pytest.raises(DescriptorParseError, match="'type' must be"):
        descriptor_from_dict({"type": "nisan"})


def test_schema_error_names_field():
    """Test missing parameters name the field."""
    data = build_inw(8, 4, 4, 0.1).to_dict()
    del data["eps"]

    with pytest.raises(DescriptorParseError, match="eps"):
        descriptor_from_dict(data)


def test_invalid_params_are_wrapped():
    """Test out-of-range parameters surface as DescriptorParseError."""
    data = build_inw(8, 4, 4, 0.1).to_dict()
    data["w"] = 1

    with pytest.raises(DescriptorParseError, match="Width"):
        descriptor_from_dict(data)


def test_load_accepts_bare_descriptor(tmp_path: Path):
    """Test files without the build-gen wrapper load too."""
    G = build_inw(4, 2, 2, 0.5, Mode.TOY, toy_aux=1)
    path = tmp_path / "bare.json"
    path.write_text(json.dumps(G.to_dict()))

    assert load_descriptor(path) == G


def test_load_reports_json_position(tmp_path: Path):
    """Test JSON syntax errors carry line and column."""
    path = tmp_path / "bad.json"
    path.write_text("{\n  \"type\": \n")

    with pytest.raises(DescriptorParseError, match=r"bad.json:\d+:\d+"):
        load_descriptor(path)
