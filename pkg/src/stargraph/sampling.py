"""Seeded random graph generators for the fuzz suites."""

from __future__ import annotations

import random

from .graph import PointedGraph, _as_matrix


def random_scon_graph(rng: random.Random, max_ordinary: int = 5, max_edges: int = 8,
                      marked: int = 1) -> PointedGraph:
    """A nontrivial strongly connected graph built from a random ear decomposition.

    Every strongly connected graph has an ear decomposition, so every such
    graph within the bounds has positive probability.
    """
    if max_edges < 1:
        raise ValueError("need room for at least one edge")
    n = rng.randint(0, min(max_ordinary, max_edges - marked))
    size = marked + n
    adj = [[0] * size for _ in range(size)]
    # the marked vertices form the seed cycle
    edges = 0
    for i in range(marked - 1):
        adj[i][i + 1] += 1
        edges += 1
    if marked > 1:
        adj[marked - 1][0] += 1
        edges += 1
    placed = list(range(marked))
    pending = list(range(marked, size))
    rng.shuffle(pending)
    while pending:
        ears_left = max_edges - edges - len(pending)
        length = len(pending) if ears_left <= 1 else rng.randint(1, len(pending))
        path, pending = pending[:length], pending[length:]
        walk = [rng.choice(placed)] + path + [rng.choice(placed)]
        for u, v in zip(walk, walk[1:]):
            adj[u][v] += 1
        edges += len(walk) - 1
        placed.extend(path)
    lo = 1 if edges == 0 else 0
    for _ in range(rng.randint(lo, max_edges - edges)):
        adj[rng.randrange(size)][rng.randrange(size)] += 1
    return PointedGraph(marked, n, _as_matrix(adj))


def random_digraph(rng: random.Random, max_vertices: int = 7, max_mult: int = 3,
                   density: float = 0.35) -> tuple[tuple[int, ...], ...]:
    """An adjacency matrix with loops and parallel edges allowed."""
    n = rng.randint(0, max_vertices)
    return tuple(tuple(rng.randint(1, max_mult) if rng.random() < density else 0 for _ in range(n))
                 for _ in range(n))
