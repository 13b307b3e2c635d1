"""Reference counts and coefficient layers shipped with the package."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

from .formal import GraphSeries
from .graph import PointedGraph, Stability, canonical_key, graph_from_key
from .report import VerificationReport
from .series import named_series


@lru_cache(maxsize=1)
def load_golden() -> dict[str, Any]:
    text = resources.files("stargraph").joinpath("data/golden.json").read_text()
    return json.loads(text)


def golden_counts() -> dict[str, list[int]]:
    return {k: list(v) for k, v in load_golden()["count_table"]["rows"].items()}


def layer_names() -> list[str]:
    return sorted(load_golden()["layers"])


def _term_graph(marked: int, term: dict[str, Any]) -> PointedGraph:
    return PointedGraph.from_edges(marked, term["ordinary"], [tuple(e) for e in term["edges"]])


def golden_layer(name: str) -> GraphSeries:
    """The stored terms of one reference layer as a series."""
    entry = load_golden()["layers"][name]
    out = GraphSeries(entry["marked"])
    for term in entry["terms"]:
        g = _term_graph(entry["marked"], term)
        key = canonical_key(g)
        if key in out.terms:
            raise ValueError(f"duplicate reference term {key} in {name}")
        out.add(key, Fraction(term["coefficient"]))
    return out


def compare_layer(name: str) -> VerificationReport:
    """Recompute a reference layer from enumeration and compare every coefficient."""
    entry = load_golden()["layers"][name]
    lo, hi = entry["weights"]
    report = VerificationReport("tables", config={"layer": name, "series": entry["series"],
                                                  "weights": [lo, hi]})
    with report.timed():
        expected = golden_layer(name)
        computed = named_series(entry["series"], hi, Stability(entry["stability"]))
        got = {k: c for k, c in computed.terms.items() if lo <= graph_from_key(k).weight <= hi}
        for key in sorted(set(expected.terms) | set(got)):
            report.check(f"{name}:{key}", expected.coefficient(key), got.get(key, Fraction(0)))
    return report
