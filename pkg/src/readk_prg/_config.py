"""Run and corpus configuration.

Configuration comes from an optional YAML file and from command-line flags;
flags win over the file, the file wins over the defaults below. The merged
``RunConfig`` is embedded in every output as provenance.
"""

from collections.abc import Mapping
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from readk_prg._generators import DEFAULT_TOY_AUX, Mode
from readk_prg._programs import DEFAULT_EXHAUSTIVE_CAP

DEFAULT_SEED_CAP = 26
DEFAULT_SAMPLES = 10**6


class ConfigError(ValueError):
    """Raised when a configuration file cannot be read or validated."""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
        source: str = "<config>",
    ) -> None:
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        prefix = f"{where}: {field}: " if field else f"{where}: "
        super().__init__(prefix + message)
        self.field = field
        self.line = line
        self.column = column


SequenceFamily = Literal[
    "identity", "two_pass_random", "two_pass_reversal", "k_pass_random", "random"
]


class ProgramSpec(BaseModel):
    """A family of distinguisher programs.

    ``random`` and ``restricted`` programs read a sequence drawn from
    ``order``; ``restricted`` builds a random program over ``n + fixed``
    variables and fixes ``fixed`` of them at random.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["random", "parity", "mod_counter", "address", "constant", "restricted"]
    n: int = Field(default=8, ge=1)
    k: int = Field(default=2, ge=1)
    order: SequenceFamily = "two_pass_random"
    count: int = Field(default=1, ge=0)
    width: int = Field(default=4, ge=2)
    modulus: int = Field(default=3, ge=1)
    target: int = Field(default=0, ge=0)
    n_addr: int = Field(default=4, ge=1)
    fixed: int = Field(default=2, ge=0)
    value: bool = True


class GeneratorSpec(BaseModel):
    """A generator built per program.

    ``inw`` and ``uniform`` generators need only the program's ``n``;
    ``read_k`` uses the program's read profile padded to exactly ``k``
    reads, ``linear_length`` the raw profile. Unset parameters, ``mode``
    included, fall back to the run configuration; ``d`` defaults to twice the program's largest read
    count.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    kind: Literal["inw", "read_k", "linear_length", "uniform"]
    mode: Mode | None = None
    eps: float | None = Field(default=None, gt=0, lt=1)
    w: int | None = Field(default=None, ge=2)
    d: int | None = Field(default=None, ge=1)
    toy_aux: int | None = Field(default=None, ge=1)
    threshold: int | None = Field(default=None, ge=1)


class CorpusConfig(BaseModel):
    """Programs, generator recipes and the measuring method of a corpus run."""

    model_config = ConfigDict(extra="forbid")

    name: str = "corpus"
    programs: list[ProgramSpec] = Field(default_factory=list)
    generators: list[GeneratorSpec] = Field(default_factory=list)
    method: Literal["exact", "sampled", "auto"] = "auto"


class RunConfig(BaseModel):
    """Everything that determines a run's outputs."""

    model_config = ConfigDict(extra="forbid")

    input_cap: int = Field(default=DEFAULT_EXHAUSTIVE_CAP, ge=0, le=40)
    seed_cap: int = Field(default=DEFAULT_SEED_CAP, ge=0, le=40)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    samples: int = Field(default=DEFAULT_SAMPLES, ge=10**4)
    threads: int = Field(default=1, ge=1)
    format: Literal["csv", "structured"] = "structured"
    output_dir: Path = Path("out")
    toy_aux: int = Field(default=DEFAULT_TOY_AUX, ge=1)
    eps: float = Field(default=0.1, gt=0, lt=1)
    w: int = Field(default=4, ge=2)
    mode: Mode = Mode.HASH
    confidence: float = Field(default=0.99, gt=0, lt=1)
    ci_method: Literal["normal", "wilson", "exact"] = "normal"
    corpus: CorpusConfig | None = None


def tool_version() -> str:
    try:
        return version("readk_prg")
    except PackageNotFoundError:
        return "0.0.0+unknown"


def provenance(
    config: RunConfig,
    command: str | None = None,
    arguments: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Header embedded in every output file.

    Command-line runs also record the subcommand and its own arguments, so
    the header together with the configuration is enough to rerun them.
    """
    header: dict[str, Any] = {
        "tool": "readk-prg",
        "version": tool_version(),
        "config": config.model_dump(mode="json"),
    }
    if command is not None:
        header["command"] = command
        header["arguments"] = dict(arguments or {})
    return header


def _locate(node: yaml.Node | None, loc: tuple[Any, ...]) -> yaml.Node | None:
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            node = next(
                (v for k, v in node.value if getattr(k, "value", None) == str(key)),
                None,
            )
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int):
            node = node.value[key] if key < len(node.value) else None
        else:
            return node
        if node is None:
            return None
    return node


def _validation_error(
    e: ValidationError, root: yaml.Node | None, source: str
) -> ConfigError:
    first = e.errors()[0]
    loc = tuple(first["loc"])
    node = _locate(root, loc) if root is not None else None
    line = node.start_mark.line + 1 if node is not None else None
    column = node.start_mark.column + 1 if node is not None else None
    return ConfigError(
        first["msg"],
        field=".".join(str(p) for p in loc),
        line=line,
        column=column,
        source=source,
    )


def parse_config_text(
    text: str, overrides: dict[str, Any] | None = None, source: str = "<config>"
) -> RunConfig:
    """Validate YAML text merged with ``overrides`` (``None`` values are ignored).

    Raises:
        ConfigError: On YAML syntax errors (with line and column) or invalid
            fields (with the dotted field path and its location).
    """
    try:
        root = yaml.compose(text) if text.strip() else None
        data = yaml.safe_load(text) if text.strip() else {}
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise ConfigError(
            str(e.problem),
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
            source=source,
        ) from e
    except yaml.YAMLError as e:
        raise ConfigError(str(e), source=source) from e
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", source=source)

    merged = {**data, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise _validation_error(e, root, source) from e


def load_run_config(
    path: str | Path | None = None, overrides: dict[str, Any] | None = None
) -> RunConfig:
    """Load ``path`` (if given) and apply flag ``overrides`` on top."""
    if path is None:
        return parse_config_text("", overrides)
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config: {e.strerror}", source=str(path)) from e
    return parse_config_text(text, overrides, source=str(path))


def desk_corpus() -> CorpusConfig:
    """Default desk-scale corpus: n = 8 programs against toy and hash generators."""
    return CorpusConfig(
        name="desk",
        programs=[
            ProgramSpec(kind="random", n=8, k=2, order="two_pass_random", count=50),
            ProgramSpec(kind="parity", n=8, k=1, order="identity"),
            ProgramSpec(kind="mod_counter", n=8, modulus=3, target=0),
            ProgramSpec(kind="mod_counter", n=8, modulus=3, target=1),
            ProgramSpec(kind="address", n_addr=4),
            ProgramSpec(kind="restricted", n=8, fixed=2, count=5),
        ],
        generators=[
            GeneratorSpec(name="toy-inw", kind="inw", mode=Mode.TOY),
            GeneratorSpec(name="hash-read-k", kind="read_k", mode=Mode.HASH),
        ],
        method="auto",
    )


def toy_regression_corpus() -> CorpusConfig:
    """Exact toy-mode corpus whose values are stored as regression baselines."""
    return CorpusConfig(
        name="toy-regression",
        programs=[
            ProgramSpec(kind="random", n=8, k=2, order="two_pass_random", count=50),
            ProgramSpec(kind="parity", n=8, k=1, order="identity"),
            ProgramSpec(kind="parity", n=6, k=1, order="identity"),
            ProgramSpec(kind="mod_counter", n=8, modulus=3, target=0),
            ProgramSpec(kind="mod_counter", n=8, modulus=3, target=1),
        ],
        generators=[
            GeneratorSpec(name="toy-inw", kind="inw", mode=Mode.TOY, w=4),
            GeneratorSpec(name="toy-read-k", kind="read_k", mode=Mode.TOY, w=4),
        ],
        method="exact",
    )
