"""Bipartite support graphs, matchings, and covering-failure witnesses.

The left side of a support graph holds column indices and the right side
holds row indices; an edge means the matrix entry is nonzero.  Matching
search is deterministic: columns are scanned in index order over sorted
adjacency lists, so equal inputs give equal matchings everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .linalg import SparseMatrix
    from .strings import SaturatedString

__all__ = [
    "Vertex",
    "SupportGraph",
    "Matching",
    "support_graph",
    "max_matching",
    "hall_violator",
    "deficiency_string",
    "cantor_bernstein_merge",
]


@dataclass(frozen=True, order=True)
class Vertex:
    """A side-tagged vertex: ``c`` for a column (left), ``r`` for a row (right)."""

    side: str
    index: int

    def __post_init__(self) -> None:
        if self.side not in ("r", "c"):
            raise ValueError(f"vertex side must be 'r' or 'c', got {self.side!r}")
        if self.index < 0:
            raise ValueError("vertex index must be nonnegative")

    @classmethod
    def col(cls, j: int) -> "Vertex":
        return cls("c", j)

    @classmethod
    def row(cls, i: int) -> "Vertex":
        return cls("r", i)

    @property
    def is_col(self) -> bool:
        return self.side == "c"

    @property
    def is_row(self) -> bool:
        return self.side == "r"

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


class SupportGraph:
    """Bipartite graph with column vertices on the left, row vertices on the right."""

    __slots__ = ("left", "right", "adj", "radj", "edges")

    def __init__(self, left: Iterable[int], right: Iterable[int],
                 edges: Iterable[tuple[int, int]]):
        self.left = tuple(sorted(set(left)))
        self.right = tuple(sorted(set(right)))
        lset, rset = set(self.left), set(self.right)
        adj: dict[int, set[int]] = {j: set() for j in self.left}
        radj: dict[int, set[int]] = {i: set() for i in self.right}
        eset = set()
        for j, i in edges:
            if j not in lset:
                raise ValueError(f"edge endpoint c{j} is not a left vertex")
            if i not in rset:
                raise ValueError(f"edge endpoint r{i} is not a right vertex")
            adj[j].add(i)
            radj[i].add(j)
            eset.add((j, i))
        self.adj = {j: tuple(sorted(s)) for j, s in adj.items()}
        self.radj = {i: tuple(sorted(s)) for i, s in radj.items()}
        self.edges = frozenset(eset)

    @classmethod
    def from_matrix(cls, matrix: "SparseMatrix") -> "SupportGraph":
        return cls(range(matrix.num_cols), range(matrix.num_rows),
                   ((j, i) for i, j, _ in matrix.nonzeros()))

    def neighbours(self, col: int) -> tuple[int, ...]:
        return self.adj[col]

    def co_neighbours(self, row: int) -> tuple[int, ...]:
        return self.radj[row]

    def neighbourhood(self, cols: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for j in cols:
            out.update(self.adj[j])
        return frozenset(out)

    def has_edge(self, col: int, row: int) -> bool:
        return (col, row) in self.edges

    def has_vertex(self, v: Vertex) -> bool:
        return v.index in (self.adj if v.is_col else self.radj)


@dataclass(frozen=True)
class Matching:
    """A set of (column, row) edges with every vertex used at most once."""

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def checked(cls, graph: SupportGraph, pairs: Iterable[tuple[int, int]]) -> "Matching":
        ps = frozenset(pairs)
        cols_seen, rows_seen = set(), set()
        for j, i in ps:
            if (j, i) not in graph.edges:
                raise ValueError(f"(c{j}, r{i}) is not an edge")
            if j in cols_seen or i in rows_seen:
                raise ValueError(f"vertex reused at (c{j}, r{i})")
            cols_seen.add(j)
            rows_seen.add(i)
        return cls(ps)

    @cached_property
    def col_to_row(self) -> dict[int, int]:
        return {j: i for j, i in sorted(self.pairs)}

    @cached_property
    def row_to_col(self) -> dict[int, int]:
        return {i: j for j, i in sorted(self.pairs)}

    @property
    def size(self) -> int:
        return len(self.pairs)

    def covers_cols(self, graph: SupportGraph) -> bool:
        return all(j in self.col_to_row for j in graph.left)

    def covers_rows(self, graph: SupportGraph) -> bool:
        return all(i in self.row_to_col for i in graph.right)

    def is_perfect(self, graph: SupportGraph) -> bool:
        return self.covers_cols(graph) and self.covers_rows(graph)


def support_graph(matrix: "SparseMatrix") -> SupportGraph:
    """The bipartite graph whose edges are the nonzero positions of the matrix."""
    return SupportGraph.from_matrix(matrix)


def max_matching(graph: SupportGraph) -> Matching:
    """Maximum matching by augmenting paths, columns tried in index order."""
    match_row: dict[int, int] = {}   # row -> col

    def augment(col: int, banned: set[int]) -> bool:
        for row in graph.adj[col]:
            if row in banned:
                continue
            banned.add(row)
            owner = match_row.get(row)
            if owner is None or augment(owner, banned):
                match_row[row] = col
                return True
        return False

    for col in graph.left:
        augment(col, set())
    return Matching.checked(graph, ((j, i) for i, j in match_row.items()))


def hall_violator(graph: SupportGraph) -> frozenset[int] | None:
    """A set of columns J0 with |N(J0)| < |J0|, or None if a matching covers all columns.

    J0 is the set of columns reachable by alternating paths from the columns
    a maximum matching leaves unmatched, so it is deterministic and its
    neighbourhood consists exactly of the matched partners it traps.
    """
    m = max_matching(graph)
    col_to_row = m.col_to_row
    row_to_col = m.row_to_col
    exposed = [j for j in graph.left if j not in col_to_row]
    if not exposed:
        return None
    reach_cols = set(exposed)
    reach_rows: set[int] = set()
    frontier = list(exposed)
    while frontier:
        col = frontier.pop()
        for row in graph.adj[col]:
            if row in reach_rows:
                continue
            reach_rows.add(row)
            back = row_to_col.get(row)
            if back is not None and back not in reach_cols:
                reach_cols.add(back)
                frontier.append(back)
    violator = frozenset(reach_cols)
    if not len(graph.neighbourhood(violator)) < len(violator):
        raise AssertionError("alternating reachability produced a non-violating set")
    return violator


def deficiency_string(graph: SupportGraph, violator: Iterable[int]) -> "SaturatedString":
    """The saturated string listing N(J0) in index order, then J0 in index order.

    Its value under the one-step weighting is |N(J0)| - |J0|, which is
    negative by the violator property.
    """
    from .strings import SaturatedString  # import here to avoid a module cycle

    j0 = sorted(set(violator))
    if not j0:
        raise ValueError("violator set must be nonempty")
    for j in j0:
        if j not in graph.adj:
            raise ValueError(f"c{j} is not a left vertex")
    hood = sorted(graph.neighbourhood(j0))
    if not len(hood) < len(j0):
        raise ValueError("given set does not violate the covering condition")
    entries = tuple([Vertex.row(i) for i in hood] + [Vertex.col(j) for j in j0])
    return SaturatedString(entries)


def cantor_bernstein_merge(graph: SupportGraph, cols_cover: Matching,
                           rows_cover: Matching) -> Matching:
    """Merge a column-covering and a row-covering matching into a perfect one.

    The union of the two matchings is decomposed into connected components;
    every component must be a shared edge or an alternating cycle (coverage
    on both sides forces this at finite scale), and the column-side matching
    restricted to the component covers it, so those edges are selected.
    """
    if not cols_cover.covers_cols(graph):
        raise ValueError("first matching does not cover the columns")
    if not rows_cover.covers_rows(graph):
        raise ValueError("second matching does not cover the rows")
    s_col = cols_cover.col_to_row
    t_row = rows_cover.row_to_col
    chosen: set[tuple[int, int]] = set()
    seen_cols: set[int] = set()
    for start in graph.left:
        if start in seen_cols:
            continue
        # Walk col -(cols_cover)-> row -(rows_cover)-> col until the start
        # column comes back around.  Coverage makes every step total, and
        # matchings are injective, so the walk can only close at the start.
        col = start
        while True:
            seen_cols.add(col)
            row = s_col[col]
            chosen.add((col, row))
            nxt = t_row.get(row)
            if nxt is None:
                raise AssertionError("row-covering matching lost a row mid-walk")
            col = nxt
            if col == start:
                break
            if col in seen_cols:
                raise AssertionError("matching union walk re-entered a closed component")
    merged = Matching.checked(graph, chosen)
    if not merged.is_perfect(graph):
        raise AssertionError("merged matching is not perfect")
    if not merged.pairs <= (cols_cover.pairs | rows_cover.pairs):
        raise AssertionError("merged matching used a foreign edge")
    return merged
