"""Sparse vectors and matrices over an exact field, with certifying solvers.

Every answer that leaves this module is re-checked against its defining
equation before it is returned: solutions multiply back, kernel vectors
annihilate the matrix, and unsolvability certificates are verified left
null combinations with a nonzero right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .elimination import Eliminator
from .field import FieldElement, FieldSpec, Raw

__all__ = [
    "Vector",
    "SparseMatrix",
    "UnsolvabilityCertificate",
    "rank",
    "kernel_basis",
    "solve",
    "unsolvable_core",
]

Scalarish = Union[int, Fraction, FieldElement]


@dataclass(frozen=True)
class Vector:
    """Immutable sparse vector: sorted (index, element) pairs, no zeros."""

    spec: FieldSpec
    length: int
    entries: tuple[tuple[int, FieldElement], ...]

    def __post_init__(self) -> None:
        prev = -1
        for idx, el in self.entries:
            if not 0 <= idx < self.length:
                raise ValueError(f"index {idx} out of range for length {self.length}")
            if idx <= prev:
                raise ValueError("entries must be strictly increasing by index")
            if el.spec != self.spec:
                raise ValueError("entry from a different field")
            if not el:
                raise ValueError("explicit zero entry")
            prev = idx

    @classmethod
    def from_pairs(cls, spec: FieldSpec, length: int,
                   pairs: Iterable[tuple[int, Scalarish]]) -> "Vector":
        cells: dict[int, Raw] = {}
        for idx, val in pairs:
            if idx in cells:
                raise ValueError(f"duplicate index {idx}")
            cells[idx] = spec.coerce(val)
        ent = tuple((i, FieldElement(spec, v)) for i, v in sorted(cells.items()) if v != 0)
        return cls(spec, length, ent)

    @classmethod
    def from_dense(cls, spec: FieldSpec, values: Sequence[Scalarish]) -> "Vector":
        return cls.from_pairs(spec, len(values), enumerate(values))

    @classmethod
    def zero(cls, spec: FieldSpec, length: int) -> "Vector":
        return cls(spec, length, ())

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    def get(self, idx: int) -> FieldElement:
        if not 0 <= idx < self.length:
            raise IndexError(idx)
        for i, el in self.entries:
            if i == idx:
                return el
        return FieldElement(self.spec, self.spec.zero)

    def to_dense(self) -> list[FieldElement]:
        out = [FieldElement(self.spec, self.spec.zero)] * self.length
        for i, el in self.entries:
            out[i] = el
        return out

    def raw_cells(self) -> dict[int, Raw]:
        return {i: el.value for i, el in self.entries}

    def dot(self, other: "Vector") -> FieldElement:
        if other.spec != self.spec or other.length != self.length:
            raise ValueError("dot product needs matching field and length")
        spec = self.spec
        mine = self.raw_cells()
        acc = spec.zero
        for i, el in other.entries:
            v = mine.get(i)
            if v is not None:
                acc = spec.add(acc, spec.mul(v, el.value))
        return FieldElement(spec, acc)

    def scaled(self, factor: Scalarish) -> "Vector":
        f = self.spec.coerce(factor)
        return Vector.from_pairs(self.spec, self.length,
                                 ((i, self.spec.mul(f, el.value)) for i, el in self.entries))

    def __str__(self) -> str:
        return " ".join(str(el) for el in self.to_dense())


@dataclass(frozen=True)
class SparseMatrix:
    """Row-major sparse matrix; each row is a sorted tuple of (col, element)."""

    spec: FieldSpec
    num_rows: int
    num_cols: int
    rows: tuple[tuple[tuple[int, FieldElement], ...], ...]

    def __post_init__(self) -> None:
        if self.num_rows < 0 or self.num_cols < 0:
            raise ValueError("negative dimension")
        if len(self.rows) != self.num_rows:
            raise ValueError("row count does not match num_rows")
        for row in self.rows:
            prev = -1
            for col, el in row:
                if not 0 <= col < self.num_cols:
                    raise ValueError(f"column {col} out of range")
                if col <= prev:
                    raise ValueError("row entries must be strictly increasing by column")
                if el.spec != self.spec:
                    raise ValueError("entry from a different field")
                if not el:
                    raise ValueError("explicit zero entry")
                prev = col

    @classmethod
    def from_entries(cls, spec: FieldSpec, num_rows: int, num_cols: int,
                     entries: Mapping[tuple[int, int], Scalarish]
                     | Iterable[tuple[int, int, Scalarish]]) -> "SparseMatrix":
        if isinstance(entries, Mapping):
            items: Iterable[tuple[int, int, Scalarish]] = (
                (i, j, v) for (i, j), v in entries.items())
        else:
            items = entries
        per_row: dict[int, dict[int, Raw]] = {}
        for i, j, v in items:
            if not (0 <= i < num_rows and 0 <= j < num_cols):
                raise ValueError(f"entry ({i}, {j}) out of range")
            cells = per_row.setdefault(i, {})
            if j in cells:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            cells[j] = spec.coerce(v)
        rows = tuple(
            tuple((j, FieldElement(spec, v))
                  for j, v in sorted(per_row.get(i, {}).items()) if v != 0)
            for i in range(num_rows))
        return cls(spec, num_rows, num_cols, rows)

    @classmethod
    def from_dense(cls, spec: FieldSpec, grid: Sequence[Sequence[Scalarish]],
                   num_cols: int | None = None) -> "SparseMatrix":
        nr = len(grid)
        nc = num_cols if num_cols is not None else (len(grid[0]) if nr else 0)
        entries = {}
        for i, row in enumerate(grid):
            if len(row) != nc:
                raise ValueError("ragged dense grid")
            for j, v in enumerate(row):
                raw = spec.coerce(v)
                if raw != 0:
                    entries[(i, j)] = raw
        return cls.from_entries(spec, nr, nc, entries)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def entry(self, i: int, j: int) -> FieldElement:
        if not (0 <= i < self.num_rows and 0 <= j < self.num_cols):
            raise IndexError((i, j))
        for col, el in self.rows[i]:
            if col == j:
                return el
            if col > j:
                break
        return FieldElement(self.spec, self.spec.zero)

    def nonzeros(self) -> Iterable[tuple[int, int, FieldElement]]:
        for i, row in enumerate(self.rows):
            for j, el in row:
                yield i, j, el

    def raw_row(self, i: int) -> dict[int, Raw]:
        return {j: el.value for j, el in self.rows[i]}

    def column(self, j: int) -> Vector:
        if not 0 <= j < self.num_cols:
            raise IndexError(j)
        pairs = []
        for i, row in enumerate(self.rows):
            for col, el in row:
                if col == j:
                    pairs.append((i, el))
                elif col > j:
                    break
        return Vector(self.spec, self.num_rows, tuple(pairs))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(
            self.spec, self.num_cols, self.num_rows,
            ((j, i, el) for i, j, el in self.nonzeros()))

    def submatrix(self, row_ids: Sequence[int], col_ids: Sequence[int]) -> "SparseMatrix":
        """Restriction to the given original rows and columns, reindexed densely."""
        col_pos = {}
        for pos, j in enumerate(col_ids):
            if j in col_pos:
                raise ValueError(f"duplicate column {j}")
            col_pos[j] = pos
        seen_rows = set()
        entries = {}
        for pos, i in enumerate(row_ids):
            if i in seen_rows:
                raise ValueError(f"duplicate row {i}")
            seen_rows.add(i)
            for j, el in self.rows[i]:
                p = col_pos.get(j)
                if p is not None:
                    entries[(pos, p)] = el
        return SparseMatrix.from_entries(self.spec, len(row_ids), len(col_ids), entries)

    def mul_vector(self, v: Vector) -> Vector:
        """A @ v for a column vector over the columns."""
        if v.spec != self.spec or v.length != self.num_cols:
            raise ValueError("vector does not match the matrix columns")
        spec = self.spec
        cells = v.raw_cells()
        out = []
        for i, row in enumerate(self.rows):
            acc = spec.zero
            for j, el in row:
                w = cells.get(j)
                if w is not None:
                    acc = spec.add(acc, spec.mul(el.value, w))
            if acc != 0:
                out.append((i, acc))
        return Vector.from_pairs(spec, self.num_rows, out)

    def combine_rows(self, y: Vector) -> Vector:
        """y^T A as a vector over the columns."""
        if y.spec != self.spec or y.length != self.num_rows:
            raise ValueError("vector does not match the matrix rows")
        spec = self.spec
        acc: dict[int, Raw] = {}
        for i, el in y.entries:
            for j, a in self.rows[i]:
                w = spec.add(acc.get(j, spec.zero), spec.mul(el.value, a.value))
                if w == 0:
                    acc.pop(j, None)
                else:
                    acc[j] = w
        return Vector.from_pairs(spec, self.num_cols, acc.items())

    def to_dense(self) -> list[list[FieldElement]]:
        zero = FieldElement(self.spec, self.spec.zero)
        grid = [[zero] * self.num_cols for _ in range(self.num_rows)]
        for i, j, el in self.nonzeros():
            grid[i][j] = el
        return grid


@dataclass(frozen=True)
class UnsolvabilityCertificate:
    """A left combination y with y^T A = 0 and y^T b != 0."""

    y: Vector

    @classmethod
    def checked(cls, matrix: SparseMatrix, rhs: Vector, y: Vector) -> "UnsolvabilityCertificate":
        if y.is_zero:
            raise ValueError("certificate vector is zero")
        if not matrix.combine_rows(y).is_zero:
            raise ValueError("certificate does not annihilate the rows")
        if not y.dot(rhs):
            raise ValueError("certificate is orthogonal to the right-hand side")
        return cls(y)


def _feed_all(matrix: SparseMatrix, rhs: Vector | None) -> tuple[Eliminator, dict[int, Raw] | None]:
    elim = Eliminator(matrix.spec)
    rhs_cells = rhs.raw_cells() if rhs is not None else {}
    for i in range(matrix.num_rows):
        combo = elim.feed(matrix.raw_row(i), rhs_cells.get(i, matrix.spec.zero))
        if combo is not None:
            return elim, combo
    return elim, None


def _normalized(spec: FieldSpec, length: int, cells: dict[int, Raw]) -> Vector:
    """Scale so the lowest-index nonzero entry is one."""
    lead = spec.inv(cells[min(cells)])
    return Vector.from_pairs(spec, length, ((i, spec.mul(lead, v)) for i, v in cells.items()))


def rank(matrix: SparseMatrix) -> int:
    """Rank of the matrix, by deterministic sparse elimination."""
    elim, _ = _feed_all(matrix, None)
    return elim.rank


def kernel_basis(matrix: SparseMatrix) -> list[Vector]:
    """Canonical basis of the right kernel, one vector per free column.

    Vectors are derived from the unique reduced echelon form and scaled so
    their lowest-index nonzero entry is one; each one is verified to satisfy
    A v = 0 exactly before being returned.
    """
    spec = matrix.spec
    elim, _ = _feed_all(matrix, None)
    reduced = elim.reduced_pivots()
    basis = []
    for free in range(matrix.num_cols):
        if free in reduced:
            continue
        cells: dict[int, Raw] = {free: spec.one}
        for piv, row in reduced.items():
            v = row.get(free)
            if v is not None:
                cells[piv] = spec.neg(v)
        vec = _normalized(spec, matrix.num_cols, cells)
        if not matrix.mul_vector(vec).is_zero:
            raise AssertionError("kernel vector failed verification")
        basis.append(vec)
    return basis


def solve(matrix: SparseMatrix, rhs: Vector) -> Vector | UnsolvabilityCertificate:
    """Solve A x = b exactly, or certify that no solution exists.

    A solution has every free variable zero and multiplies back to b.  An
    unsolvability certificate is scaled so its lowest-index nonzero entry is
    one and is verified before being returned.
    """
    if rhs.spec != matrix.spec:
        raise ValueError("right-hand side from a different field")
    if rhs.length != matrix.num_rows:
        raise ValueError("right-hand side length does not match the rows")
    elim, combo = _feed_all(matrix, rhs)
    if combo is not None:
        y = _normalized(matrix.spec, matrix.num_rows, combo)
        return UnsolvabilityCertificate.checked(matrix, rhs, y)
    x = Vector.from_pairs(matrix.spec, matrix.num_cols, elim.solution().items())
    if matrix.mul_vector(x) != rhs:
        raise AssertionError("solution failed verification")
    return x


def unsolvable_core(matrix: SparseMatrix, rhs: Vector, minimize: bool = False) -> frozenset[int]:
    """Row indices whose combination refutes A x = b.

    The core is the support of the certificate produced by the elimination
    trail; it is re-verified unsolvable in isolation.  With ``minimize`` a
    greedy row-deletion pass shrinks it (no minimality guarantee either way).
    """
    outcome = solve(matrix, rhs)
    if isinstance(outcome, Vector):
        raise ValueError("system is solvable, no core exists")
    core = set(outcome.y.support)

    def still_unsolvable(rows: list[int]) -> bool:
        sub = matrix.submatrix(rows, range(matrix.num_cols))
        sub_rhs = Vector.from_pairs(matrix.spec, len(rows),
                                    ((pos, rhs.get(i)) for pos, i in enumerate(rows)
                                     if rhs.get(i)))
        return isinstance(solve(sub, sub_rhs), UnsolvabilityCertificate)

    if not still_unsolvable(sorted(core)):
        raise AssertionError("extracted core is not unsolvable in isolation")
    if minimize:
        for i in sorted(core):
            if len(core) > 1:
                trial = sorted(core - {i})
                if still_unsolvable(trial):
                    core.discard(i)
    return frozenset(core)
