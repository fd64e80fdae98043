"""Text formats: the matrix file, stream rows, and field tokens.

A matrix file is line oriented: a field header, a dimension line, then one
nonzero entry per line.  ``#`` starts a comment.  Writing a parsed canonical
file reproduces it byte for byte (entries sorted by row then column, no
comments, one trailing newline).
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec, parse_scalar
from .linalg import SparseMatrix

__all__ = [
    "MatrixFormatError",
    "parse_matrix",
    "render_matrix",
    "parse_field_token",
    "parse_stream_row",
]


class MatrixFormatError(ValueError):
    """A malformed matrix file, with the offending line number in the message."""


def _fail(lineno: int, why: str) -> None:
    raise MatrixFormatError(f"line {lineno}: {why}")


def parse_matrix(text: str) -> SparseMatrix:
    """Parse the line-oriented matrix format into a SparseMatrix."""
    spec: FieldSpec | None = None
    dims: tuple[int, int] | None = None
    entries: dict[tuple[int, int], FieldElement] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if spec is None:
            if parts[0] != "field":
                _fail(lineno, "expected a 'field ...' header")
            if parts[1:] == ["rational"]:
                spec = FieldSpec.rationals()
            elif len(parts) == 3 and parts[1] == "gf":
                try:
                    spec = FieldSpec.gf(int(parts[2]))
                except ValueError as exc:
                    _fail(lineno, str(exc))
            else:
                _fail(lineno, f"unknown field {' '.join(parts[1:])!r}")
            continue
        if dims is None:
            if len(parts) != 2:
                _fail(lineno, "expected '<rows> <cols>'")
            try:
                nr, nc = int(parts[0]), int(parts[1])
            except ValueError:
                _fail(lineno, "dimensions must be integers")
            if nr < 0 or nc < 0:
                _fail(lineno, "dimensions must be nonnegative")
            dims = (nr, nc)
            continue
        if len(parts) != 3:
            _fail(lineno, "expected '<row> <col> <scalar>'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            _fail(lineno, "row and column must be integers")
        if not (0 <= i < dims[0] and 0 <= j < dims[1]):
            _fail(lineno, f"entry ({i}, {j}) out of range for {dims[0]}x{dims[1]}")
        if (i, j) in entries:
            _fail(lineno, f"duplicate entry at ({i}, {j})")
        try:
            el = parse_scalar(parts[2], spec)
        except (ValueError, ZeroDivisionError) as exc:
            _fail(lineno, str(exc))
        if not el:
            _fail(lineno, "explicit zero entries are not allowed")
        entries[(i, j)] = el
    if spec is None:
        raise MatrixFormatError("missing 'field ...' header")
    if dims is None:
        raise MatrixFormatError("missing dimension line")
    return SparseMatrix.from_entries(spec, dims[0], dims[1], entries)


def render_matrix(matrix: SparseMatrix) -> str:
    """Canonical text for a matrix: header, dims, entries sorted by (row, col)."""
    spec = matrix.spec
    head = "field rational" if not spec.is_prime_field else f"field gf {spec.modulus}"
    lines = [head, f"{matrix.num_rows} {matrix.num_cols}"]
    for i, j, el in matrix.nonzeros():
        lines.append(f"{i} {j} {el}")
    return "\n".join(lines) + "\n"


def parse_field_token(token: str) -> FieldSpec:
    """Parse a compact field name: ``rational`` or ``gf:<p>``."""
    t = token.strip().lower()
    if t == "rational":
        return FieldSpec.rationals()
    if t.startswith("gf:"):
        return FieldSpec.gf(int(t[3:]))
    raise ValueError(f"unknown field token {token!r} (want 'rational' or 'gf:<p>')")


def parse_stream_row(line: str, spec: FieldSpec) -> tuple[list[tuple[int, FieldElement]], FieldElement]:
    """Parse ``<rhs> ; <col>:<scalar> <col>:<scalar> ...`` into (pairs, rhs)."""
    if ";" not in line:
        raise ValueError("stream row needs '<rhs> ; <entries>'")
    rhs_text, _, rest = line.partition(";")
    rhs = parse_scalar(rhs_text, spec)
    pairs = []
    for tok in rest.split():
        col_text, sep, val_text = tok.partition(":")
        if not sep:
            raise ValueError(f"malformed stream entry {tok!r} (want '<col>:<scalar>')")
        try:
            col = int(col_text)
        except ValueError:
            raise ValueError(f"bad column index in {tok!r}") from None
        if col < 0:
            raise ValueError(f"negative column index in {tok!r}")
        pairs.append((col, parse_scalar(val_text, spec)))
    return pairs, rhs
