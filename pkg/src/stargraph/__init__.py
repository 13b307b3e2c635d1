"""Exact graph calculus for Berezin, Berezin-Toeplitz and KBW star products on Kähler manifolds."""

__version__ = "0.1.0"

from .enumerate import EnumSpec, count_table, enumerate_graphs
from .formal import GraphSeries
from .graph import (Family, PointedGraph, Stability, aut_order, canonical_key, classify_family,
                    graph_from_key, is_semistable, is_stable, merge_marked, reverse,
                    strongly_connected, subdivide_edge)
from .karabegov import (Case, LeggedGraph, det_factorization_check, edge_sign_relation_check,
                        glue_legs, low_order_obstruction_check, unglue)
from .report import VerificationReport
from .series import (berezin_series, bergman_log_series, bt_inverse_series, compose,
                     dual_kbw_form_series, kbw_inverse_series, kbw_series, parity_flip,
                     star_compose, to_star, from_star)
from .spectral import char_det, enumerate_linear_subgraphs, linear_subgraph_sum
from .substitute import (SubgraphSelection, acyclic_sum_check, alpha, bt_subgraphs, contract, graft,
                         inversion_identity_check, s_subgraphs, split_marked, substitution_check)

__all__ = [
    "EnumSpec", "count_table", "enumerate_graphs", "GraphSeries", "Family", "PointedGraph",
    "Stability", "aut_order", "canonical_key", "classify_family", "graph_from_key", "is_semistable",
    "is_stable", "merge_marked", "reverse", "strongly_connected", "subdivide_edge", "Case",
    "LeggedGraph", "det_factorization_check", "edge_sign_relation_check", "glue_legs",
    "low_order_obstruction_check", "unglue", "VerificationReport", "berezin_series",
    "bergman_log_series", "bt_inverse_series", "compose", "dual_kbw_form_series",
    "kbw_inverse_series", "kbw_series", "parity_flip", "star_compose", "to_star", "from_star",
    "char_det", "enumerate_linear_subgraphs", "linear_subgraph_sum", "SubgraphSelection",
    "acyclic_sum_check", "alpha", "bt_subgraphs", "contract", "graft", "inversion_identity_check",
    "s_subgraphs", "split_marked", "substitution_check",
]
