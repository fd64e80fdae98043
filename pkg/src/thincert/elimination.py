"""Incremental exact Gaussian elimination with row provenance.

Rows arrive one at a time as sparse {column: raw value} dicts.  Each reduced
row remembers the combination of original rows it was built from, so a row
that vanishes with a nonzero right-hand side hands back a ready-made
refutation combination.  Pivots are deterministic: rows are processed in
arrival order and a surviving row pivots on its lowest column index.
"""

from __future__ import annotations

from .field import FieldSpec, Raw


class ReducedRow:
    __slots__ = ("cells", "rhs", "combo")

    def __init__(self, cells: dict[int, Raw], rhs: Raw, combo: dict[int, Raw]):
        self.cells = cells      # column -> value, pivot column is min(cells)
        self.rhs = rhs
        self.combo = combo      # original row index -> coefficient


class Eliminator:
    """Echelon state over a growing list of rows."""

    __slots__ = ("spec", "pivots", "rows_seen")

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.pivots: dict[int, ReducedRow] = {}
        self.rows_seen = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def feed(self, cells: dict[int, Raw], rhs: Raw) -> dict[int, Raw] | None:
        """Reduce one row against the current pivots.

        Returns the provenance combination when the row vanishes with a
        nonzero right-hand side (a contradiction), and None otherwise.
        A surviving row is registered as a new pivot.
        """
        spec = self.spec
        k = self.rows_seen
        self.rows_seen = k + 1
        row = {c: v for c, v in cells.items() if v != 0}
        combo: dict[int, Raw] = {k: spec.one}
        while True:
            hit = -1
            for c in row:
                if c in self.pivots and (hit < 0 or c < hit):
                    hit = c
            if hit < 0:
                break
            piv = self.pivots[hit]
            factor = spec.div(row.pop(hit), piv.cells[hit])
            for c, v in piv.cells.items():
                if c == hit:
                    continue
                w = spec.sub(row.get(c, spec.zero), spec.mul(factor, v))
                if w == 0:
                    row.pop(c, None)
                else:
                    row[c] = w
            rhs = spec.sub(rhs, spec.mul(factor, piv.rhs))
            for i, y in piv.combo.items():
                w = spec.sub(combo.get(i, spec.zero), spec.mul(factor, y))
                if w == 0:
                    combo.pop(i, None)
                else:
                    combo[i] = w
        if row:
            self.pivots[min(row)] = ReducedRow(row, rhs, combo)
            return None
        if rhs != 0:
            return combo
        return None

    def solution(self) -> dict[int, Raw]:
        """Back-substitute a solution with every free variable set to zero."""
        spec = self.spec
        x: dict[int, Raw] = {}
        for c in sorted(self.pivots, reverse=True):
            r = self.pivots[c]
            acc = r.rhs
            for cc, v in r.cells.items():
                if cc == c:
                    continue
                xv = x.get(cc)
                if xv is not None:
                    acc = spec.sub(acc, spec.mul(v, xv))
            val = spec.div(acc, r.cells[c])
            if val != 0:
                x[c] = val
        return x

    def reduced_pivots(self) -> dict[int, dict[int, Raw]]:
        """Fully back-reduced pivot rows with unit leading entries.

        The result is the unique reduced echelon basis of the row space, so
        anything derived from it is canonical regardless of feed order.
        """
        spec = self.spec
        reduced: dict[int, dict[int, Raw]] = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c].cells)
            for cc in [x for x in row if x != c and x in self.pivots]:
                # cc > c, already reduced; its row has a unit lead and only
                # free columns elsewhere, so no new pivot columns appear.
                factor = row.pop(cc)
                for c2, v2 in reduced[cc].items():
                    if c2 == cc:
                        continue
                    w = spec.sub(row.get(c2, spec.zero), spec.mul(factor, v2))
                    if w == 0:
                        row.pop(c2, None)
                    else:
                        row[c2] = w
            lead = row[c]
            if lead != spec.one:
                scale = spec.inv(lead)
                row = {cc: spec.mul(scale, v) for cc, v in row.items()}
            reduced[c] = row
        return reduced
