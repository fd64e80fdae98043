"""Incremental consistency checking for equation rows arriving one at a time.

The column universe grows as new column indices appear.  Solvability status
is monotone: once some prefix is refuted the status latches, though later
rows are still accepted.  The refutation core comes straight from the
elimination provenance and is re-verified in isolation before it is stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .elimination import Eliminator
from .field import FieldElement, FieldSpec, Raw
from .linalg import Vector

__all__ = ["AllPrefixesSolvable", "UnsolvableAt", "StreamStatus", "StreamState"]


@dataclass(frozen=True)
class AllPrefixesSolvable:
    """Every prefix pushed so far admits a solution."""


@dataclass(frozen=True)
class UnsolvableAt:
    """The first ``prefix_len`` rows are unsolvable; ``core`` refutes on its own."""

    prefix_len: int
    core: frozenset[int]


StreamStatus = Union[AllPrefixesSolvable, UnsolvableAt]


class StreamState:
    """Single-writer accumulator of equation rows over one field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.num_cols = 0
        self.status: StreamStatus = AllPrefixesSolvable()
        self._elim = Eliminator(spec)
        self._rows: list[tuple[dict[int, Raw], Raw]] = []

    @property
    def num_rows(self) -> int:
        return len(self._rows)

    @property
    def is_solvable(self) -> bool:
        return isinstance(self.status, AllPrefixesSolvable)

    def push(self, row: Iterable[tuple[int, FieldElement]], rhs: FieldElement) -> "StreamState":
        """Append one equation; updates the eliminated form and the status."""
        cells: dict[int, Raw] = {}
        top = self.num_cols
        for col, el in row:
            if not isinstance(col, int) or col < 0:
                raise ValueError(f"bad column index {col!r}")
            if col in cells:
                raise ValueError(f"duplicate column {col}")
            cells[col] = self.spec.coerce(el)
            top = max(top, col + 1)
        rhs_raw = self.spec.coerce(rhs)
        self.num_cols = top
        cells = {c: v for c, v in cells.items() if v != 0}
        self._rows.append((cells, rhs_raw))
        combo = self._elim.feed(dict(cells), rhs_raw)
        if combo is not None and self.is_solvable:
            core = frozenset(combo)
            self._verify_core(core)
            self.status = UnsolvableAt(len(self._rows), core)
        return self

    def _verify_core(self, core: frozenset[int]) -> None:
        check = Eliminator(self.spec)
        contradicted = False
        for i in sorted(core):
            cells, rhs_raw = self._rows[i]
            if check.feed(dict(cells), rhs_raw) is not None:
                contradicted = True
        if not contradicted:
            raise AssertionError("stream core is not unsolvable in isolation")

    def solution(self) -> Vector:
        """A solution of everything pushed so far, free variables zero."""
        if not self.is_solvable:
            raise ValueError("stream has an unsolvable prefix")
        x = self._elim.solution()
        for cells, rhs_raw in self._rows:
            acc = self.spec.zero
            for c, v in cells.items():
                xv = x.get(c)
                if xv is not None:
                    acc = self.spec.add(acc, self.spec.mul(v, xv))
            if acc != rhs_raw:
                raise AssertionError("stream solution failed verification")
        return Vector.from_pairs(self.spec, self.num_cols, x.items())
