"""Weight-graded formal sums of pointed graphs with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .graph import CanonicalKey, PointedGraph, canonical_key, graph_from_key


def _sort_key(key: CanonicalKey) -> tuple[int, CanonicalKey]:
    return graph_from_key(key).weight, key


class GraphSeries:
    """A map from canonical keys to exact rationals, all with the same marked count.

    ``max_weight`` and ``max_ordinary`` record how far the series is known to
    be complete; ``mode`` names the enumeration class it was built from
    (``"stable"``, ``"ss"``, ``"scon"`` or ``None`` for ad hoc sums).
    """

    def __init__(self, marked_count: int, terms: Mapping[CanonicalKey, Fraction | int] = (),
                 max_weight: int | None = None, max_ordinary: int | None = None,
                 mode: str | None = None):
        self.marked_count = marked_count
        self.max_weight = max_weight
        self.max_ordinary = max_ordinary
        self.mode = mode
        self.terms: dict[CanonicalKey, Fraction] = {}
        for k, c in dict(terms).items():
            self.add(k, c)

    def add(self, key: CanonicalKey | PointedGraph, coeff: Fraction | int) -> None:
        if isinstance(key, PointedGraph):
            key = canonical_key(key)
        g = graph_from_key(key)
        if g.marked_count != self.marked_count:
            raise ValueError(f"term {key} has {g.marked_count} marked vertices, series has {self.marked_count}")
        total = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def coefficient(self, key: CanonicalKey | PointedGraph) -> Fraction:
        if isinstance(key, PointedGraph):
            key = canonical_key(key)
        return self.terms.get(key, Fraction(0))

    def __getitem__(self, key):
        return self.coefficient(key)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[CanonicalKey]:
        return iter(sorted(self.terms, key=_sort_key))

    def items(self) -> list[tuple[CanonicalKey, Fraction]]:
        """Terms by ascending weight, then key."""
        return [(k, self.terms[k]) for k in self]

    def layer(self, weight: int) -> dict[CanonicalKey, Fraction]:
        return {k: c for k, c in self.items() if graph_from_key(k).weight == weight}

    def weights(self) -> list[int]:
        return sorted({graph_from_key(k).weight for k in self.terms})

    def truncate(self, max_weight: int | None = None, max_ordinary: int | None = None) -> "GraphSeries":
        keep = {}
        for k, c in self.terms.items():
            g = graph_from_key(k)
            if max_weight is not None and g.weight > max_weight:
                continue
            if max_ordinary is not None and g.ordinary_count > max_ordinary:
                continue
            keep[k] = c
        mw = max_weight if self.max_weight is None else min(x for x in (max_weight, self.max_weight) if x is not None)
        mo = max_ordinary if self.max_ordinary is None else min(x for x in (max_ordinary, self.max_ordinary) if x is not None)
        return GraphSeries(self.marked_count, keep, mw, mo, self.mode)

    def map_coefficients(self, fn) -> "GraphSeries":
        return GraphSeries(self.marked_count, {k: fn(k, c) for k, c in self.terms.items()},
                           self.max_weight, self.max_ordinary, self.mode)

    def _combine(self, other: "GraphSeries", sign: int) -> "GraphSeries":
        if other.marked_count != self.marked_count:
            raise ValueError("cannot combine series with different marked counts")
        out = GraphSeries(self.marked_count, self.terms, _min(self.max_weight, other.max_weight),
                          _min(self.max_ordinary, other.max_ordinary), self.mode)
        for k, c in other.terms.items():
            out.add(k, sign * c)
        return out

    def __add__(self, other: "GraphSeries") -> "GraphSeries":
        return self._combine(other, 1)

    def __sub__(self, other: "GraphSeries") -> "GraphSeries":
        return self._combine(other, -1)

    def __neg__(self) -> "GraphSeries":
        return self.map_coefficients(lambda k, c: -c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphSeries):
            return NotImplemented
        return self.marked_count == other.marked_count and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.items()[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} terms)"
        return f"GraphSeries(m={self.marked_count}, {{{body}{more}}})"

    @classmethod
    def identity(cls, marked_count: int = 1, **bounds) -> "GraphSeries":
        return cls(marked_count, {canonical_key(PointedGraph.point(marked_count)): 1}, **bounds)

    @classmethod
    def from_pairs(cls, marked_count: int, pairs: Iterable[tuple[PointedGraph, Fraction | int]]) -> "GraphSeries":
        s = cls(marked_count)
        for g, c in pairs:
            s.add(g, c)
        return s


def _min(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
