"""The named graph series and the operations that combine them."""

from __future__ import annotations

import enum
from collections import defaultdict
from fractions import Fraction
from typing import Callable

from .enumerate import EnumSpec, enumerate_graphs
from .formal import GraphSeries
from .graph import (CanonicalKey, Family, PointedGraph, Stability, aut_order, canonical_key,
                    graph_from_key, merge_marked)
from .report import VerificationReport
from .spectral import char_det
from .substitute import graft_at, split_marked

__all__ = [
    "GraphSeries", "IncompleteSeriesError", "SeriesName", "berezin_series", "bt_inverse_series",
    "bergman_log_series", "kbw_series", "kbw_inverse_series", "dual_kbw_form_series", "named_series",
    "to_star", "from_star", "compose", "star_compose", "parity_flip", "compose_inverse_check",
    "associativity_check",
]


class IncompleteSeriesError(ValueError):
    """Raised when a series is not known to be complete enough for the requested result."""


Coefficient = Callable[[PointedGraph], Fraction]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _build(marked: int, kmax: int, stability: Stability, family: Family, coeff: Coefficient,
           max_ordinary: int | None, min_weight: int = 0) -> GraphSeries:
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    if stability is Stability.SCON and max_ordinary is None:
        max_ordinary = kmax + 1
    out = GraphSeries(marked, max_weight=kmax, max_ordinary=max_ordinary, mode=stability.value)
    for k in range(min_weight, kmax + 1):
        for key in enumerate_graphs(EnumSpec(marked, k, stability, family, max_ordinary)):
            out.add(key, coeff(graph_from_key(key)))
    return out


def berezin_series(kmax: int, stability: Stability = Stability.STABLE,
                   max_ordinary: int | None = None) -> GraphSeries:
    """Coefficient ``det(A(G_-) - I) / |Aut|`` over all one-pointed graphs."""
    return _build(1, kmax, stability, Family.ALL,
                  lambda g: Fraction(char_det(g), aut_order(g)), max_ordinary)


def bt_inverse_series(kmax: int, stability: Stability = Stability.STABLE,
                      max_ordinary: int | None = None) -> GraphSeries:
    """Coefficient ``(-1)^|E| / |Aut|`` over the BT family."""
    return _build(1, kmax, stability, Family.BT,
                  lambda g: Fraction(_sign(g.edge_count), aut_order(g)), max_ordinary)


def bergman_log_series(kmax: int, stability: Stability = Stability.SEMISTABLE,
                       max_ordinary: int | None = None) -> GraphSeries:
    """Zero-pointed series with coefficient ``-det(A - I) / |Aut|``, weights ``1..kmax``."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    return _build(0, kmax, stability, Family.ALL,
                  lambda g: Fraction(-char_det(g), aut_order(g)), max_ordinary, min_weight=1)


def dual_kbw_form_series(kmax: int, stability: Stability = Stability.SEMISTABLE,
                         max_ordinary: int | None = None) -> GraphSeries:
    """Zero-pointed series with coefficient ``(-1)^(|E|+1) / |Aut|``, weights ``1..kmax``."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    return _build(0, kmax, stability, Family.ALL,
                  lambda g: Fraction(-_sign(g.edge_count), aut_order(g)), max_ordinary, min_weight=1)


def kbw_series(kmax: int, stability: Stability = Stability.STABLE,
               max_ordinary: int | None = None) -> GraphSeries:
    """Coefficient ``(-1)^|V| / |Aut|`` (ordinary vertices) over the acyclic family."""
    return _build(1, kmax, stability, Family.S,
                  lambda g: Fraction(_sign(g.ordinary_count), aut_order(g)), max_ordinary)


def kbw_inverse_series(kmax: int, stability: Stability = Stability.STABLE,
                       max_ordinary: int | None = None) -> GraphSeries:
    """Coefficient ``(-1)^|E| / |Aut|`` over all one-pointed graphs."""
    return _build(1, kmax, stability, Family.ALL,
                  lambda g: Fraction(_sign(g.edge_count), aut_order(g)), max_ordinary)


class SeriesName(enum.Enum):
    BEREZIN = "berezin"
    BT_INVERSE = "bt-inverse"
    BERGMAN_LOG = "bergman-log"
    KBW = "kbw"
    KBW_INVERSE = "kbw-inverse"
    BT_STAR = "bt-star"
    KBW_STAR = "kbw-star"


_BUILDERS = {
    SeriesName.BEREZIN: berezin_series,
    SeriesName.BT_INVERSE: bt_inverse_series,
    SeriesName.BERGMAN_LOG: bergman_log_series,
    SeriesName.KBW: kbw_series,
    SeriesName.KBW_INVERSE: kbw_inverse_series,
}


def named_series(name: SeriesName | str, kmax: int, stability: Stability = Stability.STABLE,
                 max_ordinary: int | None = None) -> GraphSeries:
    name = SeriesName(name)
    if name is SeriesName.BT_STAR:
        return to_star(bt_inverse_series(kmax, stability, max_ordinary))
    if name is SeriesName.KBW_STAR:
        return to_star(kbw_series(kmax, stability, max_ordinary))
    return _BUILDERS[name](kmax, stability, max_ordinary)


# -- star form ---------------------------------------------------------------

def to_star(series: GraphSeries) -> GraphSeries:
    """Split every term's marked vertex into the two argument slots."""
    if series.marked_count != 1:
        raise ValueError("to_star needs a one-pointed series")
    out = GraphSeries(2, max_weight=series.max_weight, max_ordinary=series.max_ordinary, mode=series.mode)
    for key, c in series.terms.items():
        out.add(split_marked(graph_from_key(key)), c)
    return out


def from_star(series: GraphSeries) -> GraphSeries:
    """Merge the two argument slots back into one marked vertex."""
    if series.marked_count != 2:
        raise ValueError("from_star needs a two-pointed series")
    out = GraphSeries(1, max_weight=series.max_weight, max_ordinary=series.max_ordinary, mode=series.mode)
    for key, c in series.terms.items():
        out.add(merge_marked(graph_from_key(key)), c)
    return out


def parity_flip(series: GraphSeries) -> GraphSeries:
    """Multiply the weight-k layer by ``(-1)^k``."""
    return series.map_coefficients(lambda key, c: c * _sign(graph_from_key(key).weight))


# -- composition ---------------------------------------------------------------

def _is_exact(s: GraphSeries) -> bool:
    """An ad hoc finite sum with no truncation bounds is exact as given."""
    return s.mode is None and s.max_weight is None and s.max_ordinary is None


def _bounds(outer: GraphSeries, inner: GraphSeries, max_weight: int | None,
            max_ordinary: int | None) -> tuple[int, int]:
    bounded = [s for s in (outer, inner) if not _is_exact(s)]
    for s in bounded:
        if s.mode != Stability.SCON.value:
            raise IncompleteSeriesError(
                f"composition needs strongly connected series without stability cuts, got mode {s.mode!r}")
    if max_weight is None:
        vals = [s.max_weight for s in bounded if s.max_weight is not None]
        if not vals:
            raise IncompleteSeriesError("no weight bound available; pass max_weight")
        max_weight = min(vals)
    if max_ordinary is None:
        vals = [s.max_ordinary for s in bounded if s.max_ordinary is not None]
        if not vals:
            raise IncompleteSeriesError("no vertex bound available; pass max_ordinary")
        max_ordinary = min(vals)
    for s in bounded:
        if s.max_weight is not None and s.max_weight < max_weight:
            raise IncompleteSeriesError(f"series only complete through weight {s.max_weight}")
        if s.max_ordinary is not None and s.max_ordinary < max_ordinary:
            raise IncompleteSeriesError(f"series only complete through {s.max_ordinary} ordinary vertices")
    for s in (outer, inner):
        if any(graph_from_key(k).weight < 0 for k in s.terms):
            raise IncompleteSeriesError("negative-weight terms break the truncation argument")
    return max_weight, max_ordinary


def _graded(series: GraphSeries) -> dict[tuple[int, int], list[tuple[PointedGraph, Fraction]]]:
    out: dict[tuple[int, int], list] = defaultdict(list)
    for key, c in series.items():
        g = graph_from_key(key)
        out[(g.weight, g.ordinary_count)].append((g, c))
    return out


def _plug(outer: GraphSeries, inner: GraphSeries, slot: int, marked: int,
          max_weight: int, max_ordinary: int) -> GraphSeries:
    mode = None if _is_exact(outer) and _is_exact(inner) else Stability.SCON.value
    result = GraphSeries(marked, max_weight=max_weight, max_ordinary=max_ordinary, mode=mode)
    acc: dict[CanonicalKey, Fraction] = defaultdict(Fraction)
    inner_graded = _graded(inner)
    for (wo, no), outer_terms in sorted(_graded(outer).items()):
        for (wi, ni), inner_terms in sorted(inner_graded.items()):
            if wo + wi > max_weight or no + ni > max_ordinary:
                continue
            for go, co in outer_terms:
                for gi, ci in inner_terms:
                    for key, count in graft_at(go, slot, gi).items():
                        acc[key] += co * ci * count
    for key in sorted(acc):
        result.add(key, acc[key])
    return result


def compose(outer: GraphSeries, inner: GraphSeries, max_ordinary: int | None = None,
            max_weight: int | None = None) -> GraphSeries:
    """Substitute ``inner`` into the marked vertex of every term of one-pointed ``outer``.

    Grafting adds weights and ordinary vertex counts, and every nontrivial
    term has positive weight, so each target within the bounds receives all
    of its contributions.
    """
    if outer.marked_count != 1:
        raise ValueError("compose needs a one-pointed outer series")
    w, v = _bounds(outer, inner, max_weight, max_ordinary)
    return _plug(outer, inner, 0, inner.marked_count, w, v)


def star_compose(outer: GraphSeries, inner: GraphSeries, slot: int,
                 max_ordinary: int | None = None, max_weight: int | None = None) -> GraphSeries:
    """Plug a two-pointed series into argument ``slot`` (1 or 2) of another."""
    if outer.marked_count != 2 or inner.marked_count != 2:
        raise ValueError("star_compose needs two-pointed series")
    if slot not in (1, 2):
        raise ValueError("slot must be 1 or 2")
    w, v = _bounds(outer, inner, max_weight, max_ordinary)
    return _plug(outer, inner, slot - 1, 3, w, v)


# -- checks ------------------------------------------------------------------

INVERSE_PAIRS: dict[str, tuple[Callable[..., GraphSeries], Callable[..., GraphSeries]]] = {
    "bt": (bt_inverse_series, berezin_series),
    "kbw": (kbw_inverse_series, kbw_series),
}


def compose_inverse_check(pair: str = "bt", max_weight: int = 3,
                          max_ordinary: int | None = None) -> VerificationReport:
    """Both orders of composing a transform with its inverse give the point series."""
    if max_ordinary is None:
        max_ordinary = max_weight
    report = VerificationReport("compose-inverse", config={
        "pair": pair, "max_weight": max_weight, "max_ordinary": max_ordinary})
    with report.timed():
        inv_fn, fwd_fn = INVERSE_PAIRS[pair]
        inv = inv_fn(max_weight, Stability.SCON, max_ordinary)
        fwd = fwd_fn(max_weight, Stability.SCON, max_ordinary)
        ident = GraphSeries.identity(1)
        for label, got in (("inverse-after", compose(inv, fwd)), ("inverse-before", compose(fwd, inv))):
            support = sorted(set(got.terms) | set(ident.terms))
            for key in support:
                report.check(f"{label}:{key}", ident.coefficient(key), got.coefficient(key))
    return report


def associativity_check(which: str = "bt", max_weight: int = 2,
                        max_ordinary: int = 4) -> VerificationReport:
    """Compare both bracketings of a triple star product term by term."""
    builders = {"bt": bt_inverse_series, "kbw": kbw_series}
    report = VerificationReport("associativity", config={
        "which": which, "max_weight": max_weight, "max_ordinary": max_ordinary})
    with report.timed():
        star = to_star(builders[which](max_weight, Stability.SCON, max_ordinary))
        left = star_compose(star, star, 1)
        right = star_compose(star, star, 2)
        for key in sorted(set(left.terms) | set(right.terms)):
            report.check(key, left.coefficient(key), right.coefficient(key))
    return report


def stable_part(series: GraphSeries) -> GraphSeries:
    """Terms whose merged graph is stable."""
    from .graph import is_stable

    keep = {}
    for key, c in series.terms.items():
        g = graph_from_key(key)
        merged = merge_marked(g) if g.marked_count >= 2 else g
        if is_stable(merged):
            keep[key] = c
    return GraphSeries(series.marked_count, keep, series.max_weight, series.max_ordinary, series.mode)


def point_key(marked: int = 1) -> CanonicalKey:
    return canonical_key(PointedGraph.point(marked))
