"""Named verification suites, each returning a :class:`VerificationReport`."""

from __future__ import annotations

import random
from typing import Callable

from .enumerate import EnumSpec, count_table, enumerate_graphs, enumerate_n
from .golden import compare_layer, golden_counts, layer_names
from .graph import (PointedGraph, Stability, graph_from_key, merge_marked, reverse,
                    subdivide_edge, edge_slots)
from .karabegov import karabegov_suite
from .report import VerificationReport
from .sampling import random_digraph, random_scon_graph
from .series import associativity_check, compose_inverse_check
from .spectral import char_det, enumerate_linear_subgraphs, linear_subgraph_sum
from .substitute import acyclic_sum_check, inversion_identity_check, substitution_check

SUITES = ("inversion", "acyclic-sum", "substitution", "subdivision-sign", "coefficient-theorem",
          "compose-inverse", "associativity", "karabegov", "tables")


def _population(max_weight: int, trials: int, seed: int) -> list[tuple[str, PointedGraph]]:
    """Nontrivial semistable one-pointed graphs plus seeded random strongly connected ones."""
    out = []
    for k in range(max_weight + 1):
        for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
            g = graph_from_key(key)
            if g.edge_count:
                out.append((key, g))
    rng = random.Random(seed)
    for t in range(trials):
        g = random_scon_graph(rng, max_ordinary=5, max_edges=8)
        out.append((f"random[{t}]", g))
    return out


def _zero_suite(name: str, fn: Callable[[PointedGraph], int], max_weight: int, trials: int,
                seed: int) -> VerificationReport:
    report = VerificationReport(name, config={"max_weight": max_weight, "trials": trials, "seed": seed})
    with report.timed():
        for label, g in _population(max_weight, trials, seed):
            report.check(label, 0, fn(g))
    return report


def inversion_suite(max_weight: int = 3, trials: int = 500, seed: int = 0) -> VerificationReport:
    return _zero_suite("inversion", inversion_identity_check, max_weight, trials, seed)


def _merge_parallel(g: PointedGraph) -> PointedGraph:
    adj = tuple(tuple(min(x, 1) for x in row) for row in g.adjacency)
    return PointedGraph(g.marked_count, g.ordinary_count, adj)


def acyclic_sum_suite(max_weight: int = 3, trials: int = 500, seed: int = 0,
                      merge_trials: int = 100) -> VerificationReport:
    """The acyclic-family sum, plus its invariance when parallel edges are collapsed."""
    report = _zero_suite("acyclic-sum", acyclic_sum_check, max_weight, trials, seed)
    with report.timed():
        rng = random.Random(seed + 1)
        for t in range(merge_trials):
            g = random_scon_graph(rng, max_ordinary=5, max_edges=8)
            report.check(f"merged[{t}]", acyclic_sum_check(g), acyclic_sum_check(_merge_parallel(g)))
    report.config["merge_trials"] = merge_trials
    return report


def _small_scon(marked: int, max_edges: int) -> list[PointedGraph]:
    keys: set[str] = set()
    for n in range(max_edges + 1):
        for w in range(max_edges - n + 1):
            keys |= enumerate_n(marked, n, w, Stability.SCON)
    return [graph_from_key(k) for k in sorted(keys)]


def substitution_suite(max_edges: int = 3) -> VerificationReport:
    """Raw grafting against alpha counting, for all small outer and inner graphs."""
    report = VerificationReport("substitution", config={"max_edges": max_edges})
    with report.timed():
        outers = _small_scon(1, max_edges)
        inners = _small_scon(1, max_edges) + _small_scon(2, max_edges)
        for outer in outers:
            for inner in inners:
                report.merge(substitution_check(outer, inner))
    report.suite = "substitution"
    return report


def subdivision_sign_suite(max_weight: int = 3) -> VerificationReport:
    """Subdividing any edge flips the sign of the ordinary-part determinant."""
    report = VerificationReport("subdivision-sign", config={"max_weight": max_weight})
    with report.timed():
        for k in range(max_weight + 1):
            for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                base = char_det(g)
                for tail, head, p in edge_slots(g):
                    h = subdivide_edge(g, tail, head, p)
                    report.check(f"{key}:{tail}->{head}#{p}", -base, char_det(h))
    return report


def _explicit_sum(adj) -> int:
    return sum(l.sign for l in enumerate_linear_subgraphs(adj))


def coefficient_theorem_suite(max_weight: int = 3, trials: int = 1000, seed: int = 0,
                              max_vertices: int = 7, max_multiplicity: int = 3) -> VerificationReport:
    """Linear-subgraph expansion against elimination, on enumerated and random matrices."""
    report = VerificationReport("coefficient-theorem", config={
        "max_weight": max_weight, "trials": trials, "seed": seed,
        "max_vertices": max_vertices, "max_multiplicity": max_multiplicity})
    with report.timed():
        mats = []
        for m in (0, 1, 2):
            lo = 1 if m == 0 else 0
            for k in range(lo, max_weight + 1):
                for key in enumerate_graphs(EnumSpec(m, k, Stability.SEMISTABLE)):
                    g = graph_from_key(key)
                    mats.append((f"{key}:whole", g.adjacency))
                    mats.append((f"{key}:ordinary", g.ordinary_part()))
        rng = random.Random(seed)
        for t in range(trials):
            mats.append((f"random[{t}]", random_digraph(rng, max_vertices, max_multiplicity)))
        for label, adj in mats:
            want = char_det(adj)
            report.check(label, want, linear_subgraph_sum(adj))
            if len(adj) <= 5:
                report.check(f"{label}:explicit", want, _explicit_sum(adj))
    return report


def compose_inverse_suite(max_weight: int = 3, max_ordinary: int = 3) -> VerificationReport:
    report = VerificationReport("compose-inverse", config={"max_weight": max_weight,
                                                           "max_ordinary": max_ordinary})
    with report.timed():
        for pair in ("bt", "kbw"):
            report.merge(compose_inverse_check(pair, max_weight, max_ordinary))
    return report


def associativity_suite(max_weight: int = 2, max_ordinary: int = 4) -> VerificationReport:
    report = VerificationReport("associativity", config={"max_weight": max_weight,
                                                         "max_ordinary": max_ordinary})
    with report.timed():
        for which in ("bt", "kbw"):
            report.merge(associativity_check(which, max_weight, max_ordinary))
    return report


def tables_suite(max_weight: int = 6) -> VerificationReport:
    """Stored counts and coefficient layers against fresh enumeration."""
    report = VerificationReport("tables", config={"max_weight": max_weight})
    with report.timed():
        golden = golden_counts()
        got = count_table(max_weight)
        for fam, row in got.items():
            for k, count in enumerate(row):
                if k < len(golden[fam.value]):
                    report.check(f"count:{fam.value}:{k}", golden[fam.value][k], count)
        for name in layer_names():
            report.merge(compare_layer(name))
    return report


def reversal_suite(max_weight: int = 3) -> VerificationReport:
    """Series coefficients only depend on the graph up to reversing every edge."""
    from .series import berezin_series, bt_inverse_series, kbw_inverse_series, kbw_series

    report = VerificationReport("reversal", config={"max_weight": max_weight})
    with report.timed():
        for build in (berezin_series, bt_inverse_series, kbw_series, kbw_inverse_series):
            s = build(max_weight)
            for key, c in s.items():
                report.check(f"{build.__name__}:{key}", c, s.coefficient(reverse(graph_from_key(key))))
    return report


def merge_split_suite(max_weight: int = 4) -> VerificationReport:
    from .substitute import split_marked

    report = VerificationReport("merge-split", config={"max_weight": max_weight})
    with report.timed():
        for k in range(max_weight + 1):
            for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                report.check(key, g, merge_marked(split_marked(g)))
    return report


def run_suite(name: str, max_weight: int | None = None, trials: int | None = None, seed: int = 0,
              max_ordinary: int | None = None, max_vertices: int = 7,
              max_multiplicity: int = 3) -> VerificationReport:
    """Dispatch by suite name with that suite's defaults for unspecified bounds."""
    if name == "inversion":
        return inversion_suite(_or(max_weight, 3), _or(trials, 500), seed)
    if name == "acyclic-sum":
        return acyclic_sum_suite(_or(max_weight, 3), _or(trials, 500), seed)
    if name == "substitution":
        return substitution_suite(_or(max_weight, 3))
    if name == "subdivision-sign":
        return subdivision_sign_suite(_or(max_weight, 3))
    if name == "coefficient-theorem":
        return coefficient_theorem_suite(_or(max_weight, 3), _or(trials, 1000), seed,
                                         max_vertices, max_multiplicity)
    if name == "compose-inverse":
        return compose_inverse_suite(_or(max_weight, 3), _or(max_ordinary, 3))
    if name == "associativity":
        return associativity_suite(_or(max_weight, 2), _or(max_ordinary, 4))
    if name == "karabegov":
        return karabegov_suite(_or(trials, 200), seed)
    if name == "tables":
        return tables_suite(_or(max_weight, 6))
    raise KeyError(name)


def _or(value, default):
    return default if value is None else value
