"""Sequence file format.

Line 1 holds ``n k``, the remaining data lines hold the ``k * n`` 1-based
variable indices separated by whitespace. Lines starting with ``#`` and
blank lines are ignored.
"""

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from readk_prg._sequences.sequence import ReadKSequence, validate


class SequenceParseError(ValueError):
    """Raised when a sequence file is malformed; carries the offending line."""

    def __init__(self, source: str, line: int, message: str) -> None:
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


@dataclass(frozen=True)
class SequenceFile:
    """Contents of a sequence file, not yet checked for exact multiplicity.

    Linear-length inputs use the same layout with ``k`` read as the length
    factor: the file lists ``k * n`` indices and any variable may appear any
    number of times.
    """

    n: int
    k: int
    elems: tuple[int, ...]

    def counts(self) -> Counter[int]:
        return Counter(self.elems)

    def as_read_k(self) -> ReadKSequence:
        """Validate as a read-k sequence over ``[0, n)``."""
        return validate(self.elems, self.n, self.k)


def parse_sequence_file(text: str, source: str = "<string>") -> SequenceFile:
    """Parse sequence-file text into 0-based indices.

    Raises:
        SequenceParseError: On a bad header, a non-integer or out-of-range
            index, or a length other than ``k * n``.
    """
    header: tuple[int, int] | None = None
    header_line = 0
    elems: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last_line = lineno
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise SequenceParseError(source, lineno, "expected header 'n k'")
            try:
                n, k = int(tokens[0]), int(tokens[1])
            except ValueError as e:
                raise SequenceParseError(
                    source, lineno, f"header must be two integers, got {line!r}"
                ) from e
            if n < 0 or k < 1:
                raise SequenceParseError(
                    source, lineno, f"need n >= 0 and k >= 1, got n={n} k={k}"
                )
            header, header_line = (n, k), lineno
            continue
        for token in tokens:
            try:
                index = int(token)
            except ValueError as e:
                raise SequenceParseError(
                    source, lineno, f"not an integer: {token!r}"
                ) from e
            if not 1 <= index <= header[0]:
                raise SequenceParseError(
                    source, lineno, f"index {index} outside [1, {header[0]}]"
                )
            elems.append(index - 1)

    if header is None:
        raise SequenceParseError(source, max(last_line, 1), "missing header 'n k'")
    n, k = header
    if len(elems) != n * k:
        raise SequenceParseError(
            source,
            last_line or header_line,
            f"expected {n * k} indices for n={n} k={k}, found {len(elems)}",
        )
    return SequenceFile(n=n, k=k, elems=tuple(elems))


def read_sequence_file(path: str | Path) -> SequenceFile:
    """Parse a sequence file; errors name the file and line."""
    path = Path(path)
    return parse_sequence_file(path.read_text(encoding="utf-8"), source=str(path))


def format_sequence_file(
    n: int, k: int, elems: tuple[int, ...] | list[int], comment: str | None = None
) -> str:
    """Render 0-based indices in the 1-based file layout."""
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"{n} {k}")
    lines.append(" ".join(str(v + 1) for v in elems))
    return "\n".join(lines) + "\n"


def write_sequence_file(path: str | Path, s: ReadKSequence, comment: str | None = None) -> None:
    """Write ``s`` with an optional leading comment."""
    Path(path).write_text(
        format_sequence_file(s.n, s.k, s.elems, comment), encoding="utf-8"
    )
