"""Tests for the Inspect AI registry entry points."""


def test_registry_exports():
    """Test the registry module exposes the task, solver and scorer."""
    from readk_prg import _registry

    names = [name for name in dir(_registry) if not name.startswith("_")]
    assert {"fooling_corpus", "fooling_scorer", "measure"} <= set(names)


def test_task_has_task_decorator():
    """Test the task is registered through the decorator."""
    from readk_prg._registry import fooling_corpus

    assert hasattr(fooling_corpus, "__wrapped__")


def test_entry_point_declared():
    """Test pyproject points Inspect AI at the registry module."""
    import tomllib
    from pathlib import Path

    pyproject = tomllib.loads((Path(__file__).parent.parent / "pyproject.toml").read_text())
    assert pyproject["project"]["entry-points"]["inspect_ai"] == {"readk_prg": "readk_prg._registry"}
