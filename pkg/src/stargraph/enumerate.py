"""Enumeration of strongly connected pointed graphs by weight.

Graphs are produced one vertex count at a time.  For each count we pick
in/out degree sequences (ordinary vertices sorted by degree pair to cut
relabelings), fill contingency tables with those margins, keep the strongly
connected ones and deduplicate by canonical key.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .graph import (CanonicalKey, Family, Matrix, PointedGraph, Stability, aut_order,
                    canonical_form, encode, family_flags, graph_from_key,
                    matrix_strongly_connected, merge_marked)
from .spectral import char_det

SUPPORTED_MARKED = (0, 1, 2, 3)


@dataclass(frozen=True)
class EnumSpec:
    marked_count: int
    weight: int
    stability: Stability = Stability.STABLE
    family: Family = Family.ALL
    max_ordinary: int | None = None

    def __post_init__(self):
        if self.marked_count not in SUPPORTED_MARKED:
            raise ValueError(f"unsupported marked count {self.marked_count}")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        if self.stability is Stability.SCON and self.max_ordinary is None:
            raise ValueError("SCON enumeration needs max_ordinary: the class is infinite per weight")
        if self.max_ordinary is not None and self.max_ordinary < 0:
            raise ValueError("max_ordinary must be non-negative")

    def ordinary_bound(self) -> int:
        if self.stability is Stability.STABLE:
            bound = self.weight
        elif self.stability is Stability.SEMISTABLE:
            bound = 2 * self.weight
        else:
            bound = self.max_ordinary
        if self.max_ordinary is not None:
            bound = min(bound, self.max_ordinary)
        return bound


def _ordinary_lower(stability: Stability) -> tuple[int, int, int]:
    """Lower bounds (in, out, in+out) for ordinary vertices."""
    if stability is Stability.STABLE:
        return 2, 2, 4
    if stability is Stability.SEMISTABLE:
        return 1, 1, 3
    return 1, 1, 2


def _compositions(total: int, caps: list[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``x`` with ``sum(x) == total`` and ``0 <= x[i] <= caps[i]``."""
    if not caps:
        if total == 0:
            yield ()
        return
    head, rest = caps[0], caps[1:]
    room = sum(rest)
    for x in range(max(0, total - room), min(head, total) + 1):
        for tail in _compositions(total - x, rest):
            yield (x,) + tail


def _tables(rows: list[int], cols: list[int], no_pure_loops: list[bool]) -> Iterator[Matrix]:
    """Non-negative integer matrices with the given margins.

    ``no_pure_loops[i]`` demands that row ``i`` and column ``i`` each carry at
    least one non-loop edge (a strong-connectivity necessity).
    """
    size = len(rows)
    acc: list[tuple[int, ...]] = []

    def rec(i: int, remaining: list[int]) -> Iterator[Matrix]:
        if i == size:
            yield tuple(acc)
            return
        for row in _compositions(rows[i], remaining):
            if no_pure_loops[i] and row[i] == rows[i]:
                continue
            if no_pure_loops[i] and row[i] == cols[i]:
                continue
            acc.append(row)
            yield from rec(i + 1, [r - x for r, x in zip(remaining, row)])
            acc.pop()

    yield from rec(0, list(cols))


def _marked_pairs(m: int, n: int, edges: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Out/in degree tuples for the marked vertices."""
    if m == 0:
        yield (), ()
        return
    if m == 1:
        lo = 1 if (n > 0 or edges > 0) else 0
        for o in range(lo, edges + 1):
            for d in range(lo, edges + 1):
                yield (o,), (d,)
        return
    for outs in itertools.product(range(edges + 1), repeat=m):
        if sum(outs) > edges or (n > 0 and sum(outs) == 0):
            continue
        for ins in itertools.product(range(edges + 1), repeat=m):
            if sum(ins) > edges or (n > 0 and sum(ins) == 0):
                continue
            yield outs, ins


def _ordinary_degree_profiles(n: int, out_total: int, in_total: int,
                              lower: tuple[int, int, int]) -> Iterator[list[tuple[int, int]]]:
    """Non-increasing sequences of (out, in) pairs with the given sums."""
    lo_in, lo_out, lo_sum = lower
    pairs = [(o, d) for o in range(lo_out, out_total + 1) for d in range(lo_in, in_total + 1)
             if o + d >= lo_sum]
    pairs.sort(reverse=True)

    def rec(k: int, start: int, o_left: int, d_left: int) -> Iterator[list[tuple[int, int]]]:
        if k == 0:
            if o_left == 0 and d_left == 0:
                yield []
            return
        for idx in range(start, len(pairs)):
            o, d = pairs[idx]
            if o > o_left or d > d_left:
                continue
            if o_left - o < lo_out * (k - 1) or d_left - d < lo_in * (k - 1):
                continue
            for tail in rec(k - 1, idx, o_left - o, d_left - d):
                yield [(o, d)] + tail

    yield from rec(n, 0, out_total, in_total)


def raw_graphs(m: int, n: int, edges: int, stability: Stability) -> Iterator[Matrix]:
    """Labeled candidates (ordinary vertices degree-sorted) with ``n`` ordinary vertices."""
    lower = _ordinary_lower(stability)
    pure_loop_guard = [m == 1 and n > 0] * m + [m + n > 1] * n
    for outs, ins in _marked_pairs(m, n, edges):
        o_left, d_left = edges - sum(outs), edges - sum(ins)
        for prof in _ordinary_degree_profiles(n, o_left, d_left, lower):
            rows = list(outs) + [p[0] for p in prof]
            cols = list(ins) + [p[1] for p in prof]
            yield from _tables(rows, cols, pure_loop_guard)


def _connected(adj: Matrix, m: int) -> bool:
    if m >= 2:
        adj = merge_marked(PointedGraph(m, len(adj) - m, adj)).adjacency
    return matrix_strongly_connected(adj)


def enumerate_n(m: int, n: int, weight: int, stability: Stability) -> set[CanonicalKey]:
    """Canonical keys of all class members with exactly ``n`` ordinary vertices."""
    edges = weight + n
    seen: set[CanonicalKey] = set()
    for adj in raw_graphs(m, n, edges, stability):
        if not _connected(adj, m):
            continue
        canon, _ = canonical_form(adj, m)
        seen.add(encode(m, n, canon))
    canonical_form.cache_clear()
    return seen


def enumerate_graphs(spec: EnumSpec) -> list[CanonicalKey]:
    """Sorted canonical keys of every member of the class described by ``spec``."""
    keys: set[CanonicalKey] = set()
    for n in range(spec.ordinary_bound() + 1):
        keys |= enumerate_n(spec.marked_count, n, spec.weight, spec.stability)
    if spec.family is not Family.ALL:
        keys = {k for k in keys if spec.family in family_flags(graph_from_key(k).ordinary_part())}
    return sorted(keys)


@dataclass
class GraphRecord:
    key: CanonicalKey
    weight: int
    edge_count: int
    ordinary_count: int
    aut: int
    det: int
    families: list[str] = field(default_factory=list)

    @classmethod
    def of(cls, key: CanonicalKey) -> "GraphRecord":
        g = graph_from_key(key)
        flags = family_flags(g.ordinary_part())
        return cls(key, g.weight, g.edge_count, g.ordinary_count, aut_order(g), char_det(g),
                   sorted(f.value for f in flags))


def records(spec: EnumSpec) -> list[GraphRecord]:
    return [GraphRecord.of(k) for k in enumerate_graphs(spec)]


TABLE_ROWS = (Family.ALL, Family.B, Family.BT, Family.S)


def count_table(max_k: int, progress=None) -> dict[Family, list[int]]:
    """Counts of stable one-pointed graphs per weight, split by family."""
    table = {f: [] for f in TABLE_ROWS}
    for k in range(max_k + 1):
        keys = enumerate_graphs(EnumSpec(1, k))
        flags = [family_flags(graph_from_key(key).ordinary_part()) for key in keys]
        for f in TABLE_ROWS:
            table[f].append(sum(f in fl for fl in flags))
        if progress:
            progress(k, {f.value: table[f][-1] for f in TABLE_ROWS})
    return table
