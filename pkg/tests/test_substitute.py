from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_alpha, brute_graft
from strategies import pointed_graphs
from stargraph.enumerate import EnumSpec, enumerate_graphs, enumerate_n
from stargraph.graph import (PointedGraph, Stability, aut_order, canonical_key, graph_from_key,
                             merge_marked)
from stargraph.substitute import (SubgraphSelection, acyclic_sum_check, all_selections, alpha,
                                  bt_subgraphs, contract, graft, graft_at, inversion_identity_check,
                                  s_subgraphs, split_marked, substitution_check)

E = PointedGraph.from_edges
LOOP1 = PointedGraph.loops(1)
LOOP2 = PointedGraph.loops(2)
CYCLE = E(1, 1, [(0, 1), (1, 0)])
LOOP_CYCLE = E(1, 1, [(0, 1), (1, 0), (1, 1)])
TWO_ONE = E(1, 1, [(0, 1, 2), (1, 0)])
K = canonical_key


def small_scon(marked, max_edges):
    keys = set()
    for n in range(max_edges + 1):
        for w in range(max_edges - n + 1):
            keys |= enumerate_n(marked, n, w, Stability.SCON)
    return [graph_from_key(k) for k in sorted(keys)]


class TestSplit:
    def test_loops_become_source_sink_edges(self):
        assert split_marked(LOOP1) == E(2, 0, [(0, 1)])
        assert split_marked(LOOP2) == E(2, 0, [(0, 1, 2)])

    def test_loop_cycle(self):
        assert split_marked(LOOP_CYCLE) == E(2, 1, [(0, 2), (2, 1), (2, 2)])

    def test_needs_one_pointed(self):
        with pytest.raises(ValueError):
            split_marked(E(2, 0, [(0, 1)]))

    def test_merge_inverts_split(self):
        for k in range(5):
            for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                assert merge_marked(split_marked(g)) == g

    @given(pointed_graphs(marked=st.just(1)))
    def test_merge_inverts_split_random(self, g):
        assert merge_marked(split_marked(g)) == g


class TestGraft:
    def test_loop_into_loop(self):
        assert graft(LOOP1, LOOP1).terms == {K(LOOP2): 1}
        assert graft(LOOP1, LOOP1, raw=False).terms == {K(LOOP2): 1}

    def test_loop_into_cycle(self):
        got = graft(LOOP1, CYCLE)
        want = {K(E(1, 1, [(0, 1), (1, 0), (0, 0)])): 1, K(LOOP_CYCLE): 1,
                K(TWO_ONE): 1, K(E(1, 1, [(0, 1), (1, 0, 2)])): 1}
        assert got.terms == want

    def test_point_is_neutral(self):
        for g in (LOOP1, LOOP2, LOOP_CYCLE, TWO_ONE):
            assert graft(g, PointedGraph.point()).terms == {K(g): 1}

    def test_errors(self):
        with pytest.raises(ValueError):
            graft(E(2, 0, [(0, 1)]), LOOP1)
        with pytest.raises(ValueError):
            graft_at(LOOP1, 1, LOOP1)
        with pytest.raises(ValueError):
            graft_at(LOOP1, 0, PointedGraph(0, 0, ()))

    def test_multiplicities_sum_to_assignment_count(self):
        for outer in small_scon(1, 3):
            for inner in small_scon(1, 2) + small_scon(2, 2):
                total = sum(graft_at(outer, 0, inner).values())
                assert total == inner.size ** (2 * outer.adjacency[0][0] + sum(outer.adjacency[0][1:])
                                               + sum(r[0] for r in outer.adjacency[1:]))

    @settings(max_examples=150)
    @given(pointed_graphs(marked=st.just(1), max_ordinary=2, max_edges=4),
           pointed_graphs(marked=st.integers(1, 2), max_ordinary=2, max_edges=3))
    def test_matches_endpoint_enumeration(self, outer, inner):
        assert Counter(graft_at(outer, 0, inner)) == brute_graft(outer, inner)

    def test_marked_order_for_two_pointed_outer(self):
        outer = E(2, 0, [(0, 1)])
        got = graft_at(outer, 1, E(2, 0, [(1, 0)]))
        # result marked order: outer 0, inner 0, inner 1
        assert sum(got.values()) == 2 and all(k.startswith("P3V0:") for k in got)


class TestContract:
    def test_full_selection_gives_point(self):
        sel = SubgraphSelection.of((0, 1), {(0, 1): 1, (1, 0): 1, (1, 1): 1})
        assert contract(LOOP_CYCLE, sel) == PointedGraph.point()

    def test_empty_selection_is_identity(self):
        assert K(contract(LOOP_CYCLE, SubgraphSelection.of((0,), {}))) == K(LOOP_CYCLE)

    def test_unselected_inner_loop_survives(self):
        sel = SubgraphSelection.of((0, 1), {(0, 1): 1, (1, 0): 1})
        assert contract(LOOP_CYCLE, sel) == LOOP1

    def test_single_edge_contraction(self):
        g = E(1, 1, [(0, 1), (1, 0, 2)])
        sel = SubgraphSelection.of((0, 1), {(0, 1): 1})
        assert contract(g, sel) == LOOP2

    def test_invalid_selections(self):
        with pytest.raises(ValueError):
            contract(LOOP_CYCLE, SubgraphSelection.of((1,), {}))
        with pytest.raises(ValueError):
            contract(LOOP_CYCLE, SubgraphSelection.of((0, 1), {(1, 1): 2}))
        with pytest.raises(ValueError):
            contract(LOOP_CYCLE, SubgraphSelection.of((0,), {(0, 1): 1}))

    def test_bookkeeping(self):
        for k in range(4):
            for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                for sel in all_selections(g):
                    h, c = sel.subgraph(g), contract(g, sel)
                    assert g.edge_count == h.edge_count + c.edge_count
                    assert g.ordinary_count == h.ordinary_count + c.ordinary_count
                    assert g.weight == h.weight + c.weight


class TestAlpha:
    def test_examples(self):
        assert alpha(LOOP1, LOOP1, LOOP2) == 2
        assert alpha(LOOP1, CYCLE, LOOP_CYCLE) == 1
        assert alpha(LOOP1, CYCLE, TWO_ONE) == 2
        assert Fraction(alpha(LOOP1, CYCLE, TWO_ONE), aut_order(TWO_ONE)) == 1

    def test_mismatched_sizes_vanish(self):
        assert alpha(LOOP1, LOOP1, LOOP_CYCLE) == 0
        assert alpha(E(2, 0, [(0, 1)]), LOOP1, LOOP2) == 0

    def test_matches_labeled_subset_count(self):
        for outer in small_scon(1, 2):
            for inner in small_scon(1, 2):
                for key in graft_at(outer, 0, inner):
                    host = graph_from_key(key)
                    assert alpha(outer, inner, host) == brute_alpha(outer, inner, host)

    def test_two_pointed_inner(self):
        inner = E(2, 0, [(0, 1)])
        for outer in small_scon(1, 2):
            for key in graft_at(outer, 0, inner):
                host = graph_from_key(key)
                assert alpha(outer, inner, host) == brute_alpha(outer, inner, host)


class TestSubgraphFamilies:
    def test_single_loop(self):
        assert len(bt_subgraphs(LOOP1)) == 2 and len(s_subgraphs(LOOP1)) == 2

    def test_loop_cycle(self):
        assert len(bt_subgraphs(LOOP_CYCLE)) == 3
        got = {K(sel.subgraph(LOOP_CYCLE)) for sel in s_subgraphs(LOOP_CYCLE)}
        assert got == {K(PointedGraph.point()), K(CYCLE)}

    def test_requires_one_pointed(self):
        with pytest.raises(ValueError):
            bt_subgraphs(E(2, 0, [(0, 1)]))


class TestIdentities:
    def test_examples(self):
        assert inversion_identity_check(LOOP1) == 0
        assert inversion_identity_check(LOOP_CYCLE) == 0
        assert acyclic_sum_check(LOOP1) == 0
        assert acyclic_sum_check(LOOP_CYCLE) == 0

    @pytest.mark.parametrize("k", range(1, 6))
    def test_marked_loops(self, k):
        assert acyclic_sum_check(PointedGraph.loops(k)) == 0
        assert inversion_identity_check(PointedGraph.loops(k)) == 0

    def test_enumerated(self):
        for k in range(4):
            for key in enumerate_graphs(EnumSpec(1, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                if g.edge_count:
                    assert inversion_identity_check(g) == 0
                    assert acyclic_sum_check(g) == 0

    def test_sums_are_not_vacuous(self):
        # a wrong sign convention would not cancel
        from stargraph.spectral import char_det
        g = LOOP_CYCLE
        wrong = sum(sel.ways(g) * char_det(contract(g, sel)) for sel in bt_subgraphs(g))
        assert wrong != 0

    def test_errors(self):
        with pytest.raises(ValueError):
            inversion_identity_check(PointedGraph.point())
        with pytest.raises(ValueError):
            acyclic_sum_check(E(1, 1, [(0, 1)]))
        with pytest.raises(ValueError):
            acyclic_sum_check(E(2, 0, [(0, 1), (1, 0)]))


class TestSubstitution:
    def test_examples(self):
        assert substitution_check(LOOP1, LOOP1).ok
        r = substitution_check(LOOP2, PointedGraph.point())
        assert r.ok and r.instances == 1
        assert Fraction(alpha(LOOP2, PointedGraph.point(), LOOP2), aut_order(LOOP2)) == Fraction(1, 2)

    def test_small_pairs(self):
        for outer in small_scon(1, 2):
            for inner in small_scon(1, 2) + small_scon(2, 2):
                assert substitution_check(outer, inner).ok
