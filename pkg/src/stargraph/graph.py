"""Pointed directed multigraphs.

A pointed graph has ``m`` marked vertices (indices ``0..m-1``) followed by
``n`` ordinary vertices (indices ``m..m+n-1``).  Edges are stored as a square
matrix of multiplicities; the diagonal holds loop counts.  Marked vertices
are never permuted, so two graphs are isomorphic exactly when their
canonical keys agree.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
CanonicalKey = str


class Stability(enum.Enum):
    SCON = "scon"
    SEMISTABLE = "ss"
    STABLE = "stable"


class Family(enum.Enum):
    ALL = "all"
    B = "b"
    BT = "bt"
    S = "s"


def _as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class PointedGraph:
    marked_count: int
    ordinary_count: int
    adjacency: Matrix

    def __post_init__(self):
        size = self.marked_count + self.ordinary_count
        if self.marked_count < 0 or self.ordinary_count < 0:
            raise ValueError("vertex counts must be non-negative")
        if len(self.adjacency) != size or any(len(r) != size for r in self.adjacency):
            raise ValueError(f"adjacency must be {size}x{size}")
        if any(x < 0 for r in self.adjacency for x in r):
            raise ValueError("edge multiplicities must be non-negative")

    @classmethod
    def from_edges(cls, marked: int, ordinary: int,
                   edges: Iterable[tuple[int, int] | tuple[int, int, int]] = ()) -> "PointedGraph":
        """Build a graph from ``(tail, head)`` or ``(tail, head, multiplicity)`` triples."""
        size = marked + ordinary
        adj = [[0] * size for _ in range(size)]
        for e in edges:
            i, j = e[0], e[1]
            adj[i][j] += e[2] if len(e) > 2 else 1
        return cls(marked, ordinary, _as_matrix(adj))

    @classmethod
    def point(cls, marked: int = 1) -> "PointedGraph":
        return cls(marked, 0, _as_matrix([[0] * marked for _ in range(marked)]))

    @classmethod
    def loops(cls, k: int) -> "PointedGraph":
        """One marked vertex carrying ``k`` loops."""
        return cls(1, 0, ((k,),))

    @property
    def size(self) -> int:
        return self.marked_count + self.ordinary_count

    @property
    def edge_count(self) -> int:
        return sum(map(sum, self.adjacency))

    @property
    def weight(self) -> int:
        return self.edge_count - self.ordinary_count

    @property
    def ordinary(self) -> range:
        return range(self.marked_count, self.size)

    def edges(self) -> list[tuple[int, int, int]]:
        """Non-zero ``(tail, head, multiplicity)`` entries in row-major order."""
        return [(i, j, a) for i, row in enumerate(self.adjacency)
                for j, a in enumerate(row) if a]

    def ordinary_part(self) -> Matrix:
        """Adjacency of the graph with its marked vertices deleted."""
        m = self.marked_count
        return tuple(row[m:] for row in self.adjacency[m:])

    def key(self) -> CanonicalKey:
        return canonical_key(self)


def degrees(g: PointedGraph, v: int) -> tuple[int, int]:
    """Return ``(in_degree, out_degree)``; a loop adds one to each."""
    if not 0 <= v < g.size:
        raise IndexError(f"vertex {v} out of range for graph of size {g.size}")
    return sum(row[v] for row in g.adjacency), sum(g.adjacency[v])


def _vertex_ok(din: int, dout: int, stable: bool) -> bool:
    if stable:
        return din >= 2 and dout >= 2
    return din >= 1 and dout >= 1 and din + dout >= 3


def is_semistable(g: PointedGraph) -> bool:
    return all(_vertex_ok(*degrees(g, v), stable=False) for v in g.ordinary)


def is_stable(g: PointedGraph) -> bool:
    return all(_vertex_ok(*degrees(g, v), stable=True) for v in g.ordinary)


def satisfies(g: PointedGraph, stability: Stability) -> bool:
    """Stability predicate plus strong connectivity."""
    if not strongly_connected(g):
        return False
    if stability is Stability.STABLE:
        return is_stable(g)
    if stability is Stability.SEMISTABLE:
        return is_semistable(g)
    return True


# -- connectivity ---------------------------------------------------------

def _reach(adj: Sequence[Sequence[int]], start: int, forward: bool = True) -> set[int]:
    n = len(adj)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in range(n):
            if w not in seen and (adj[u][w] if forward else adj[w][u]):
                seen.add(w)
                stack.append(w)
    return seen


def matrix_strongly_connected(adj: Sequence[Sequence[int]]) -> bool:
    n = len(adj)
    if n <= 1:
        return True
    return len(_reach(adj, 0)) == n and len(_reach(adj, 0, forward=False)) == n


def strongly_connected(g: PointedGraph) -> bool:
    """Strong connectivity, evaluated on the merged graph when ``m >= 2``."""
    if g.marked_count >= 2:
        g = merge_marked(g)
    return matrix_strongly_connected(g.adjacency)


def matrix_sccs(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, each sorted, ordered by smallest member."""
    n = len(adj)
    forward = [_reach(adj, v) for v in range(n)]
    done: set[int] = set()
    comps = []
    for v in range(n):
        if v in done:
            continue
        comp = sorted(w for w in forward[v] if v in forward[w])
        done.update(comp)
        comps.append(comp)
    return comps


def scc_decompose(g: PointedGraph, ordinary_only: bool = False) -> list[list[int]]:
    """Partition vertices into SCCs.

    With ``ordinary_only`` the marked vertices are deleted first and the
    returned indices refer to ``g`` (so they start at ``m``).
    """
    if ordinary_only:
        m = g.marked_count
        return [[v + m for v in comp] for comp in matrix_sccs(g.ordinary_part())]
    return matrix_sccs(g.adjacency)


# -- families -------------------------------------------------------------

def _scc_shape(adj: Matrix, comp: list[int]) -> str:
    """'point' (single loop-free vertex), 'cycle' (directed cycle, loop included) or 'other'."""
    if len(comp) == 1:
        loops = adj[comp[0]][comp[0]]
        return "point" if loops == 0 else ("cycle" if loops == 1 else "other")
    inside = set(comp)
    for v in comp:
        if adj[v][v]:
            return "other"
        if sum(adj[v][w] for w in inside) != 1 or sum(adj[w][v] for w in inside) != 1:
            return "other"
    return "cycle"


def family_flags(adj: Matrix) -> frozenset[Family]:
    """Families determined by a graph's ordinary part ``adj``."""
    from .spectral import char_det

    flags = {Family.ALL}
    shapes = {_scc_shape(adj, c) for c in matrix_sccs(adj)}
    if shapes <= {"point", "cycle"}:
        flags.add(Family.BT)
    if shapes <= {"point"}:
        flags.add(Family.S)
    if char_det(adj) != 0:
        flags.add(Family.B)
    return frozenset(flags)


def classify_family(g: PointedGraph) -> frozenset[Family]:
    if g.marked_count != 1:
        raise ValueError("classify_family expects a one-pointed graph")
    if not strongly_connected(g):
        raise ValueError("classify_family expects a strongly connected graph")
    return family_flags(g.ordinary_part())


# -- canonical form -------------------------------------------------------

def _refine(cells: list[list[int]], row: Sequence[int]) -> list[list[int]]:
    out = []
    for cell in cells:
        if len(cell) == 1:
            out.append(cell)
            continue
        for _, grp in itertools.groupby(sorted(cell, key=row.__getitem__), key=row.__getitem__):
            out.append(list(grp))
    return out


@lru_cache(maxsize=1 << 18)
def canonical_form(adj: Matrix, m: int) -> tuple[Matrix, int]:
    """Lexicographically least row-major matrix over ordinary relabelings.

    Returns the canonical matrix and the number of relabelings attaining it,
    which is the order of the vertex automorphism group.

    The search fixes positions left to right.  The marked rows only allow
    orderings sorted by their entries, which splits the ordinary vertices into
    ordered cells.  Each later position takes a vertex from the first open
    cell, and every candidate whose row is not minimal among all live
    branches is dropped.
    """
    size = len(adj)
    cells = [list(range(m, size))] if size > m else []
    for r in range(m):
        cells = _refine(cells, adj[r])
    states: list[tuple[tuple[int, ...], list[list[int]]]] = [((), cells)]
    for _ in range(size - m):
        best = None
        winners = []
        for order, cells in states:
            first, rest = cells[0], cells[1:]
            for idx, u in enumerate(first):
                row = adj[u]
                left = first[:idx] + first[idx + 1:]
                open_cells = ([left] if left else []) + rest
                key = (tuple(row[:m]) + tuple(row[x] for x in order) + (row[u],)
                       + tuple(v for c in open_cells for v in sorted(row[x] for x in c)))
                if best is None or key < best:
                    best = key
                    winners = [(order, u, open_cells)]
                elif key == best:
                    winners.append((order, u, open_cells))
        states = [(order + (u,), _refine(oc, adj[u])) for order, u, oc in winners]
    perm = tuple(range(m)) + states[0][0]
    canon = tuple(tuple(adj[i][j] for j in perm) for i in perm)
    return canon, len(states)


def encode(m: int, n: int, adj: Matrix) -> CanonicalKey:
    return f"P{m}V{n}:" + "|".join(",".join(map(str, row)) for row in adj)


def decode(key: CanonicalKey) -> PointedGraph:
    head, _, body = key.partition(":")
    m_str, n_str = head[1:].split("V")
    m, n = int(m_str), int(n_str)
    rows = [tuple(int(x) for x in r.split(",")) for r in body.split("|")] if m + n else []
    return PointedGraph(m, n, tuple(rows))


graph_from_key = lru_cache(maxsize=1 << 16)(decode)


def canonical_key(g: PointedGraph) -> CanonicalKey:
    canon, _ = canonical_form(g.adjacency, g.marked_count)
    return encode(g.marked_count, g.ordinary_count, canon)


def canonical_graph(g: PointedGraph) -> PointedGraph:
    canon, _ = canonical_form(g.adjacency, g.marked_count)
    return PointedGraph(g.marked_count, g.ordinary_count, canon)


def parallel_factor(adj: Matrix) -> int:
    return math.prod(math.factorial(a) for row in adj for a in row if a > 1)


def aut_order(g: PointedGraph) -> int:
    """Vertex automorphisms times the factorials of every edge multiplicity."""
    _, vertex_auts = canonical_form(g.adjacency, g.marked_count)
    return vertex_auts * parallel_factor(g.adjacency)


def key_weight(key: CanonicalKey) -> int:
    return graph_from_key(key).weight


# -- structural edits -----------------------------------------------------

def permute_ordinary(g: PointedGraph, perm: Sequence[int]) -> PointedGraph:
    """Relabel ordinary vertex ``i`` (0-based among ordinary) as ``perm[i]``."""
    m = g.marked_count
    full = list(range(m)) + [m + p for p in perm]
    inv = [0] * g.size
    for old, new in enumerate(full):
        inv[new] = old
    adj = tuple(tuple(g.adjacency[inv[i]][inv[j]] for j in range(g.size)) for i in range(g.size))
    return PointedGraph(m, g.ordinary_count, adj)


def reverse(g: PointedGraph) -> PointedGraph:
    """Flip every edge."""
    return PointedGraph(g.marked_count, g.ordinary_count, tuple(zip(*g.adjacency)) if g.size else ())


def merge_marked(g: PointedGraph) -> PointedGraph:
    """Identify all marked vertices; edges among them become loops."""
    m, n = g.marked_count, g.ordinary_count
    if m == 0:
        raise ValueError("merge_marked needs at least one marked vertex")
    a = g.adjacency
    size = n + 1
    out = [[0] * size for _ in range(size)]
    for i in range(g.size):
        ii = 0 if i < m else i - m + 1
        for j in range(g.size):
            if a[i][j]:
                jj = 0 if j < m else j - m + 1
                out[ii][jj] += a[i][j]
    return PointedGraph(1, n, _as_matrix(out))


def subdivide_edge(g: PointedGraph, tail: int, head: int, parallel_index: int = 0) -> PointedGraph:
    """Replace one edge ``tail -> head`` by ``tail -> w -> head`` with a fresh vertex ``w``."""
    if not (0 <= tail < g.size and 0 <= head < g.size):
        raise IndexError("edge endpoint out of range")
    if not 0 <= parallel_index < g.adjacency[tail][head]:
        raise ValueError(f"no edge {tail}->{head} with parallel index {parallel_index}")
    size = g.size + 1
    adj = [list(row) + [0] for row in g.adjacency] + [[0] * size]
    adj[tail][head] -= 1
    adj[tail][size - 1] += 1
    adj[size - 1][head] += 1
    return PointedGraph(g.marked_count, g.ordinary_count + 1, _as_matrix(adj))


def edge_slots(g: PointedGraph) -> list[tuple[int, int, int]]:
    """Every individual edge as ``(tail, head, parallel_index)``."""
    return [(i, j, p) for i, j, a in g.edges() for p in range(a)]


def induced(g: PointedGraph, vertices: Sequence[int], mult: dict[tuple[int, int], int],
            marked: int | None = None) -> PointedGraph:
    """Graph on ``vertices`` (marked ones first) with edge counts ``mult``."""
    index = {v: i for i, v in enumerate(vertices)}
    size = len(vertices)
    adj = [[0] * size for _ in range(size)]
    for (i, j), c in mult.items():
        if c:
            adj[index[i]][index[j]] += c
    m = g.marked_count if marked is None else marked
    return PointedGraph(m, size - m, _as_matrix(adj))
