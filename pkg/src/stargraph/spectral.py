"""Exact ``det(A - I)`` and its expansion over spanning linear subgraphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Matrix, PointedGraph


def _shifted(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[a - (i == j) for j, a in enumerate(row)] for i, row in enumerate(adj)]


def bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; ``mat`` is consumed."""
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, n):
                if mat[r][k]:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * pivot - mat[i][k] * mat[k][j]) // prev
        prev = pivot
    return sign * mat[n - 1][n - 1]


def char_det(g: PointedGraph | Matrix) -> int:
    """``det(A - I)`` of a bare adjacency matrix, or of a pointed graph's ordinary part.

    Zero-pointed graphs have no marked vertices, so their ordinary part is
    the whole graph.
    """
    adj = g.ordinary_part() if isinstance(g, PointedGraph) else g
    return bareiss_det(_shifted(adj))


@dataclass(frozen=True)
class LinearSubgraph:
    """Spanning union of isolated vertices and directed cycles.

    ``cycles`` lists each cycle as its edges ``(tail, head, parallel_index)``;
    a loop is a cycle of length one.
    """
    isolated: tuple[int, ...]
    cycles: tuple[tuple[tuple[int, int, int], ...], ...]

    @property
    def sign(self) -> int:
        s = (-1) ** len(self.isolated)
        for c in self.cycles:
            s *= (-1) ** (len(c) + 1)
        return s


def _cycles_from(adj: Sequence[Sequence[int]], start: int, free: frozenset[int]) -> Iterator[list[int]]:
    """Vertex sequences of simple cycles through ``start`` inside ``free`` (loops excluded)."""
    path = [start]

    def walk(u: int) -> Iterator[list[int]]:
        if len(path) > 1 and adj[u][start]:
            yield list(path)
        for w in sorted(free):
            if w != start and w not in path and adj[u][w]:
                path.append(w)
                yield from walk(w)
                path.pop()

    yield from walk(start)


def enumerate_linear_subgraphs(adj: Sequence[Sequence[int]]) -> Iterator[LinearSubgraph]:
    """Every spanning generalized linear subgraph; parallel edges give distinct selections."""
    n = len(adj)

    def rec(free: frozenset[int], iso: tuple, cyc: tuple) -> Iterator[LinearSubgraph]:
        if not free:
            yield LinearSubgraph(iso, cyc)
            return
        v = min(free)
        rest = free - {v}
        yield from rec(rest, iso + (v,), cyc)
        for p in range(adj[v][v]):
            yield from rec(rest, iso, cyc + (((v, v, p),),))
        for seq in _cycles_from(adj, v, free):
            pairs = list(zip(seq, seq[1:] + seq[:1]))
            remaining = free - set(seq)
            ranges = [range(adj[i][j]) for i, j in pairs]
            for choice in itertools.product(*ranges):
                edges = tuple((i, j, p) for (i, j), p in zip(pairs, choice))
                yield from rec(remaining, iso, cyc + (edges,))

    yield from rec(frozenset(range(n)), (), ())


def linear_subgraph_sum(adj: Sequence[Sequence[int]]) -> int:
    """Signed count of spanning linear subgraphs, without materializing them."""

    def rec(free: frozenset[int]) -> int:
        if not free:
            return 1
        v = min(free)
        rest = free - {v}
        total = (adj[v][v] - 1) * rec(rest)
        for seq in _cycles_from(adj, v, free):
            ways = 1
            for i, j in zip(seq, seq[1:] + seq[:1]):
                ways *= adj[i][j]
            total += (-1) ** (len(seq) + 1) * ways * rec(free - set(seq))
        return total

    return rec(frozenset(range(len(adj))))
