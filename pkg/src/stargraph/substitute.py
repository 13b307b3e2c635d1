"""Splitting, grafting and contracting pointed graphs.

Two counting conventions meet here.  Grafting counts endpoint assignments:
each edge end that touched the replaced marked vertex picks a vertex of the
inserted graph independently.  Subgraph selections pick a sub-multiset of
edges per ordered vertex pair, and each selection stands for
``prod C(a_ij, b_ij)`` concrete edge subsets (``SubgraphSelection.ways``).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .formal import GraphSeries
from .graph import (CanonicalKey, Family, PointedGraph, _as_matrix, aut_order, canonical_key,
                    family_flags, graph_from_key, induced, strongly_connected)
from .report import VerificationReport
from .spectral import char_det


@dataclass(frozen=True)
class SubgraphSelection:
    """A vertex subset (all marked vertices included) plus an edge sub-multiset inside it."""
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (tail, head, chosen multiplicity)

    @classmethod
    def of(cls, vertices, mult: dict[tuple[int, int], int]) -> "SubgraphSelection":
        return cls(tuple(sorted(vertices)), tuple(sorted((i, j, c) for (i, j), c in mult.items() if c)))

    @property
    def mult(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, j, c in self.edges}

    @property
    def edge_count(self) -> int:
        return sum(c for _, _, c in self.edges)

    def validate(self, g: PointedGraph) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices) or any(not 0 <= v < g.size for v in vs):
            raise ValueError("selection vertices must be distinct vertices of the host")
        if not set(range(g.marked_count)) <= vs:
            raise ValueError("selection must contain every marked vertex")
        for i, j, c in self.edges:
            if i not in vs or j not in vs:
                raise ValueError(f"selected edge {i}->{j} leaves the vertex subset")
            if not 0 < c <= g.adjacency[i][j]:
                raise ValueError(f"selected multiplicity {c} for {i}->{j} exceeds the host's")

    def subgraph(self, g: PointedGraph) -> PointedGraph:
        return induced(g, self.vertices, self.mult)

    def ways(self, g: PointedGraph) -> int:
        """How many concrete edge subsets of ``g`` this sub-multiset stands for."""
        return math.prod(math.comb(g.adjacency[i][j], c) for i, j, c in self.edges)


# -- splitting -------------------------------------------------------------

def split_marked(g: PointedGraph) -> PointedGraph:
    """Replace the marked vertex by a source ``f1`` (out-edges) and a sink ``f2`` (in-edges)."""
    if g.marked_count != 1:
        raise ValueError("split_marked needs a one-pointed graph")
    a, n = g.adjacency, g.ordinary_count
    size = n + 2
    out = [[0] * size for _ in range(size)]
    out[0][1] = a[0][0]
    for v in range(1, n + 1):
        out[0][v + 1] = a[0][v]
        out[v + 1][1] = a[v][0]
        for w in range(1, n + 1):
            out[v + 1][w + 1] = a[v][w]
    return PointedGraph(2, n, _as_matrix(out))


# -- grafting --------------------------------------------------------------

def _distributions(total: int, cells: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Ways to send ``total`` distinguishable endpoints into ``cells`` bins, grouped by bin counts."""
    for split in itertools.combinations(range(total + cells - 1), cells - 1):
        counts, prev = [], -1
        for s in split:
            counts.append(s - prev - 1)
            prev = s
        counts.append(total + cells - 2 - prev)
        ways = math.factorial(total)
        for c in counts:
            ways //= math.factorial(c)
        yield tuple(counts), ways


@lru_cache(maxsize=1 << 16)
def _graft_cached(outer: PointedGraph, slot: int, inner: PointedGraph) -> tuple[tuple[CanonicalKey, int], ...]:
    mo, no, mi, ni = outer.marked_count, outer.ordinary_count, inner.marked_count, inner.ordinary_count
    m_res = mo - 1 + mi
    size = m_res + no + ni

    def outer_index(v: int) -> int:
        if v < slot:
            return v
        if v < mo:
            return v - 1 + mi
        return m_res + (v - mo)

    def inner_index(u: int) -> int:
        return slot + u if u < mi else m_res + no + (u - mi)

    base = [[0] * size for _ in range(size)]
    groups: list[tuple[str, int, int]] = []
    a = outer.adjacency
    for i in range(outer.size):
        for j in range(outer.size):
            c = a[i][j]
            if not c:
                continue
            if i == slot and j == slot:
                groups.append(("loop", -1, c))
            elif i == slot:
                groups.append(("out", outer_index(j), c))
            elif j == slot:
                groups.append(("in", outer_index(i), c))
            else:
                base[outer_index(i)][outer_index(j)] += c
    for i in range(inner.size):
        for j in range(inner.size):
            if inner.adjacency[i][j]:
                base[inner_index(i)][inner_index(j)] += inner.adjacency[i][j]

    targets = [inner_index(u) for u in range(inner.size)]
    pairs = [(x, y) for x in targets for y in targets]
    result: Counter[CanonicalKey] = Counter()

    def rec(idx: int, weight: int) -> None:
        if idx == len(groups):
            g = PointedGraph(m_res, no + ni, _as_matrix(base))
            result[canonical_key(g)] += weight
            return
        kind, other, c = groups[idx]
        cells = pairs if kind == "loop" else targets
        for counts, ways in _distributions(c, len(cells)):
            for cell, k in zip(cells, counts):
                if k:
                    if kind == "loop":
                        base[cell[0]][cell[1]] += k
                    elif kind == "out":
                        base[cell][other] += k
                    else:
                        base[other][cell] += k
            rec(idx + 1, weight * ways)
            for cell, k in zip(cells, counts):
                if k:
                    if kind == "loop":
                        base[cell[0]][cell[1]] -= k
                    elif kind == "out":
                        base[cell][other] -= k
                    else:
                        base[other][cell] -= k

    rec(0, 1)
    return tuple(sorted(result.items()))


def graft_at(outer: PointedGraph, slot: int, inner: PointedGraph) -> dict[CanonicalKey, int]:
    """Raw assignment counts for inserting ``inner`` at marked vertex ``slot`` of ``outer``.

    Marked vertices of the result: those of ``outer`` before ``slot``, then
    those of ``inner``, then the rest of ``outer``.
    """
    if not 0 <= slot < outer.marked_count:
        raise ValueError(f"slot {slot} is not a marked vertex of the outer graph")
    if inner.size == 0:
        raise ValueError("cannot graft an empty graph")
    return dict(_graft_cached(outer, slot, inner))


def graft(outer: PointedGraph, inner: PointedGraph, raw: bool = True) -> GraphSeries:
    """Insert ``inner`` at the marked vertex of one-pointed ``outer``.

    ``raw`` gives endpoint-assignment multiplicities; otherwise each
    resulting ``G`` carries ``alpha(outer, inner, G) / |Aut(G)|``.
    """
    if outer.marked_count != 1:
        raise ValueError("graft needs a one-pointed outer graph")
    counts = graft_at(outer, 0, inner)
    out = GraphSeries(inner.marked_count)
    for key, c in counts.items():
        if raw:
            out.add(key, c)
        else:
            host = graph_from_key(key)
            out.add(key, Fraction(alpha(outer, inner, host), aut_order(host)))
    return out


# -- contraction and selections -------------------------------------------

def contract(g: PointedGraph, sel: SubgraphSelection) -> PointedGraph:
    """Collapse the selected vertices to a new marked vertex and drop the selected edges."""
    sel.validate(g)
    inside = set(sel.vertices)
    outside = [v for v in range(g.size) if v not in inside]
    index = {v: i + 1 for i, v in enumerate(outside)}
    for v in inside:
        index[v] = 0
    size = len(outside) + 1
    adj = [[0] * size for _ in range(size)]
    chosen = sel.mult
    for i, j, c in g.edges():
        left = c - chosen.get((i, j), 0)
        if left:
            adj[index[i]][index[j]] += left
    return PointedGraph(1, len(outside), _as_matrix(adj))


def _sub_multisets(g: PointedGraph, allowed: Sequence[int] | None = None
                   ) -> Iterator[dict[tuple[int, int], int]]:
    vs = set(range(g.size) if allowed is None else allowed)
    slots = [(i, j, c) for i, j, c in g.edges() if i in vs and j in vs]
    for choice in itertools.product(*(range(c + 1) for _, _, c in slots)):
        yield {(i, j): b for (i, j, _), b in zip(slots, choice) if b}


def edge_selections(g: PointedGraph) -> Iterator[SubgraphSelection]:
    """Every edge sub-multiset, with vertex set = marked vertices plus selected endpoints."""
    marked = set(range(g.marked_count))
    for mult in _sub_multisets(g):
        vs = set(marked)
        for i, j in mult:
            vs.update((i, j))
        yield SubgraphSelection.of(vs, mult)


def all_selections(g: PointedGraph, ordinary_size: int | None = None,
                   edge_total: int | None = None) -> Iterator[SubgraphSelection]:
    """Every vertex subset containing the marked vertices, times every edge sub-multiset inside it."""
    m = g.marked_count
    ordinary = range(m, g.size)
    sizes = range(g.ordinary_count + 1) if ordinary_size is None else [ordinary_size]
    for k in sizes:
        for extra in itertools.combinations(ordinary, k):
            vs = tuple(range(m)) + extra
            for mult in _sub_multisets(g, vs):
                if edge_total is None or sum(mult.values()) == edge_total:
                    yield SubgraphSelection.of(vs, mult)


def _family_subgraphs(g: PointedGraph, family: Family) -> list[SubgraphSelection]:
    if g.marked_count != 1:
        raise ValueError("subgraph families are defined for one-pointed graphs")
    out = []
    for sel in edge_selections(g):
        h = sel.subgraph(g)
        if strongly_connected(h) and family in family_flags(h.ordinary_part()):
            out.append(sel)
    return out


def bt_subgraphs(g: PointedGraph) -> list[SubgraphSelection]:
    """Strongly connected selections through the marked vertex whose ordinary part is BT."""
    return _family_subgraphs(g, Family.BT)


def s_subgraphs(g: PointedGraph) -> list[SubgraphSelection]:
    """Strongly connected selections through the marked vertex with acyclic ordinary part."""
    return _family_subgraphs(g, Family.S)


def alpha(outer: PointedGraph, inner: PointedGraph, host: PointedGraph) -> int:
    """Number of concrete subgraphs of ``host`` isomorphic to ``inner`` whose contraction is ``outer``."""
    if outer.marked_count != 1 or host.marked_count != inner.marked_count:
        return 0
    if host.edge_count != outer.edge_count + inner.edge_count:
        return 0
    if host.ordinary_count != outer.ordinary_count + inner.ordinary_count:
        return 0
    want_inner, want_outer = canonical_key(inner), canonical_key(outer)
    total = 0
    for sel in all_selections(host, inner.ordinary_count, inner.edge_count):
        if canonical_key(sel.subgraph(host)) != want_inner:
            continue
        if canonical_key(contract(host, sel)) == want_outer:
            total += sel.ways(host)
    return total


# -- identity checks -------------------------------------------------------

def _require_nontrivial(g: PointedGraph) -> None:
    if g.marked_count != 1:
        raise ValueError("expected a one-pointed graph")
    if g.edge_count == 0:
        raise ValueError("expected a graph with at least one edge")
    if not strongly_connected(g):
        raise ValueError("expected a strongly connected graph")


def inversion_identity_check(g: PointedGraph) -> int:
    """Signed sum of ``det`` of the contractions by BT subgraphs; zero for valid input."""
    _require_nontrivial(g)
    total = 0
    for sel in bt_subgraphs(g):
        sign = -1 if sel.edge_count % 2 else 1
        total += sel.ways(g) * sign * char_det(contract(g, sel))
    return total


def acyclic_sum_check(g: PointedGraph) -> int:
    """Sum of ``(-1)^w(H)`` over acyclic-family subgraphs; zero for valid input."""
    _require_nontrivial(g)
    total = 0
    for sel in s_subgraphs(g):
        h = sel.subgraph(g)
        total += sel.ways(g) * (-1 if h.weight % 2 else 1)
    return total


def substitution_check(outer: PointedGraph, inner: PointedGraph) -> VerificationReport:
    """Compare raw grafting divided by both symmetry orders with the alpha-weighted sum."""
    report = VerificationReport("substitution", config={"outer": canonical_key(outer),
                                                        "inner": canonical_key(inner)})
    with report.timed():
        scale = aut_order(outer) * aut_order(inner)
        raw = graft_at(outer, 0, inner)
        for key in sorted(raw):
            host = graph_from_key(key)
            lhs = Fraction(raw[key], scale)
            rhs = Fraction(alpha(outer, inner, host), aut_order(host))
            report.check(key, lhs, rhs)
    return report
