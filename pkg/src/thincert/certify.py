"""Certificates for column independence and two-sided diagonal rearrangement.

``certify_columns`` decides by exact kernel computation, never by matching
existence: a trivial kernel must come with a column-covering matching (its
absence would contradict the finite covering theorem and aborts loudly),
and a nontrivial kernel is reported with a verified kernel vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .bigraph import Matching, cantor_bernstein_merge, hall_violator, max_matching, support_graph
from .linalg import SparseMatrix, Vector, kernel_basis

__all__ = [
    "Sdr",
    "Dependence",
    "Certificate",
    "Bijection",
    "certify_columns",
    "diagonalize",
]


@dataclass(frozen=True)
class Sdr:
    """An injection of columns into rows hitting nonzero entries only."""

    assignment: Mapping[int, int]

    @classmethod
    def checked(cls, matrix: SparseMatrix, assignment: Mapping[int, int]) -> "Sdr":
        if sorted(assignment) != list(range(matrix.num_cols)):
            raise ValueError("assignment must cover every column exactly once")
        if len(set(assignment.values())) != len(assignment):
            raise ValueError("assignment reuses a row")
        for j, i in assignment.items():
            if not 0 <= i < matrix.num_rows:
                raise ValueError(f"row r{i} out of range")
            if not matrix.entry(i, j):
                raise ValueError(f"entry at (r{i}, c{j}) is zero")
        return cls(dict(sorted(assignment.items())))


@dataclass(frozen=True)
class Dependence:
    """A verified nonzero kernel vector, tagged with the side it refutes."""

    vector: Vector
    side: str = "col"

    @classmethod
    def checked(cls, matrix: SparseMatrix, vector: Vector, side: str = "col") -> "Dependence":
        if side not in ("col", "row"):
            raise ValueError(f"side must be 'col' or 'row', got {side!r}")
        if vector.is_zero:
            raise ValueError("kernel vector is zero")
        target = matrix if side == "col" else matrix.transpose()
        if vector.length != target.num_cols:
            raise ValueError("kernel vector has the wrong length")
        if not target.mul_vector(vector).is_zero:
            raise ValueError("kernel vector fails to annihilate the matrix")
        return cls(vector, side)


Certificate = Union[Sdr, Dependence]


@dataclass(frozen=True)
class Bijection:
    """A two-way column/row pairing whose diagonal entries are all nonzero."""

    col_to_row: Mapping[int, int]
    row_to_col: Mapping[int, int]

    @classmethod
    def checked(cls, matrix: SparseMatrix, col_to_row: Mapping[int, int]) -> "Bijection":
        if matrix.num_rows != matrix.num_cols:
            raise ValueError("bijection requires a square matrix")
        if sorted(col_to_row) != list(range(matrix.num_cols)):
            raise ValueError("mapping must cover every column exactly once")
        if sorted(col_to_row.values()) != list(range(matrix.num_rows)):
            raise ValueError("mapping must hit every row exactly once")
        for j, i in col_to_row.items():
            if not matrix.entry(i, j):
                raise ValueError(f"entry at (r{i}, c{j}) is zero")
        fwd = dict(sorted(col_to_row.items()))
        return cls(fwd, {i: j for j, i in sorted(fwd.items())})


def certify_columns(matrix: SparseMatrix, via_violator: bool = False) -> Certificate:
    """Either an Sdr for the columns or a verified kernel vector.

    With ``via_violator`` and no column-covering matching, the kernel vector
    is recomputed inside the violator's submatrix (rows N(J0), columns J0,
    fewer rows than columns) and extended by zeros; rows outside N(J0) carry
    no support on J0, so the extension is a genuine kernel vector.
    """
    kern = kernel_basis(matrix)
    graph = support_graph(matrix)
    if not kern:
        m = max_matching(graph)
        if not m.covers_cols(graph):
            raise AssertionError(
                "trivial kernel but no column-covering matching; "
                "this contradicts the finite covering theorem")
        return Sdr.checked(matrix, m.col_to_row)
    if via_violator:
        violator = hall_violator(graph)
        if violator is not None:
            rows = sorted(graph.neighbourhood(violator))
            cols = sorted(violator)
            local = kernel_basis(matrix.submatrix(rows, cols))
            if not local:
                raise AssertionError("violator submatrix has fewer rows than columns "
                                     "yet a trivial kernel")
            lam = Vector.from_pairs(matrix.spec, matrix.num_cols,
                                    ((cols[pos], el) for pos, el in local[0].entries))
            return Dependence.checked(matrix, lam, "col")
    return Dependence.checked(matrix, kern[0], "col")


def diagonalize(matrix: SparseMatrix) -> Bijection | Dependence:
    """A diagonal rearrangement when both sides are independent.

    If the rows or the columns are dependent, the offending verified kernel
    vector is returned instead, row side reported first.  When both kernels
    are trivial the matrix must already be square; a column-covering and a
    row-covering injection are then merged into a single bijection.
    """
    row_kern = kernel_basis(matrix.transpose())
    if row_kern:
        return Dependence.checked(matrix, row_kern[0], "row")
    col_kern = kernel_basis(matrix)
    if col_kern:
        return Dependence.checked(matrix, col_kern[0], "col")
    if matrix.num_rows != matrix.num_cols:
        # Unreachable for exact arithmetic: independence on both sides pins
        # the rank to both dimensions at once.
        raise ValueError("independent rows and columns require a square matrix")
    cols_cert = certify_columns(matrix)
    rows_cert = certify_columns(matrix.transpose())
    if not (isinstance(cols_cert, Sdr) and isinstance(rows_cert, Sdr)):
        raise AssertionError("trivial kernels must certify as injections")
    graph = support_graph(matrix)
    m_cols = Matching.checked(graph, ((j, i) for j, i in cols_cert.assignment.items()))
    m_rows = Matching.checked(graph, ((j, i) for i, j in rows_cert.assignment.items()))
    merged = cantor_bernstein_merge(graph, m_cols, m_rows)
    return Bijection.checked(matrix, merged.col_to_row)
