from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import leibniz_det
from strategies import matrices
from stargraph import karabegov as kb
from stargraph.graph import PointedGraph, canonical_key, degrees, graph_from_key
from stargraph.karabegov import (Case, LeggedGraph, derivative_partners, det_factorization_check,
                                 edge_sign_relation_check, glue_legs, karabegov_suite,
                                 low_order_obstruction_check, obstruction_terms, ricci_partner,
                                 unglue)

E = PointedGraph.from_edges
LOOP_CYCLE = E(1, 1, [(0, 1), (1, 0), (1, 1)])
CYCLE = E(1, 1, [(0, 1), (1, 0)])


class TestLegs:
    def test_loop_body(self):
        assert canonical_key(glue_legs(LeggedGraph(((1,),), 0, 0))) == canonical_key(LOOP_CYCLE)

    def test_bare_vertex(self):
        assert canonical_key(glue_legs(LeggedGraph(((0,),), 0, 0))) == canonical_key(CYCLE)

    def test_connector(self):
        assert glue_legs(LeggedGraph.connector()) == PointedGraph.loops(1)
        assert unglue(PointedGraph.loops(1)).is_connector

    @given(matrices(max_size=4, max_mult=2).filter(len), st.data())
    def test_two_more_edges_and_round_trip(self, body, data):
        k = data.draw(st.integers(0, len(body) - 1))
        l = data.draw(st.integers(0, len(body) - 1))
        h = LeggedGraph(body, k, l)
        g = glue_legs(h)
        assert g.edge_count == sum(map(sum, body)) + 2
        assert degrees(g, 0) == (1, 1)
        assert unglue(g) == h

    def test_invalid(self):
        with pytest.raises(ValueError):
            LeggedGraph(((0,),), 1, 0)
        with pytest.raises(ValueError):
            LeggedGraph((), 0, None)
        with pytest.raises(ValueError):
            unglue(PointedGraph.loops(2))


class TestDetFactorization:
    def test_empty_first_block(self):
        assert det_factorization_check((), ((2,),)).ok

    def test_single_cross_edge(self):
        r = det_factorization_check(((0,),), ((2,),), [(0, 1, 1)])
        assert r.ok and r.failures == []
        assert leibniz_det(((0, 1), (0, 2))) == -1

    def test_backward_edge_rejected(self):
        with pytest.raises(ValueError):
            det_factorization_check(((0,),), ((2,),), [(1, 0, 1)])

    def test_two_way_edges_do_not_factor(self):
        combined = ((0, 1), (1, 2))
        assert leibniz_det(combined) != leibniz_det(((0,),)) * leibniz_det(((2,),))

    @settings(max_examples=100)
    @given(matrices(max_size=3), matrices(max_size=3), st.data())
    def test_random_blocks(self, a, b, data):
        cross = [(i, len(a) + j, data.draw(st.integers(0, 2))) for i in range(len(a)) for j in range(len(b))]
        assert det_factorization_check(a, b, cross).ok


class TestEdgeSigns:
    def test_loop_cycle_partner(self):
        h = ricci_partner(LOOP_CYCLE)
        assert h.edge_count == 5
        assert edge_sign_relation_check(LOOP_CYCLE, h).ok

    def test_even_edge_count(self):
        gamma = E(1, 1, [(0, 1), (1, 0, 2), (1, 1)])
        assert gamma.edge_count % 2 == 0
        assert edge_sign_relation_check(gamma, ricci_partner(gamma)).ok

    def test_dual_case(self):
        gamma = PointedGraph.loops(1)
        g = PointedGraph.from_edges(0, 1, [(0, 0, 2)])
        partners = derivative_partners(gamma, g)
        assert partners
        for key in partners:
            h = graph_from_key(key)
            assert h.edge_count == 4
            assert edge_sign_relation_check(gamma, h, g).ok

    def test_mismatched_partner(self):
        with pytest.raises(ValueError):
            edge_sign_relation_check(LOOP_CYCLE, LOOP_CYCLE)
        with pytest.raises(ValueError):
            edge_sign_relation_check(PointedGraph.loops(1), LOOP_CYCLE, PointedGraph.from_edges(0, 1, [(0, 0, 2)]))

    def test_needs_single_out_edge(self):
        with pytest.raises(ValueError):
            ricci_partner(PointedGraph.loops(2))


class TestObstruction:
    @pytest.mark.parametrize("case", list(Case))
    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_fixture(self, case, order):
        report = low_order_obstruction_check(case, order)
        assert report.ok, report.failures

    def test_order_zero_is_the_connector(self):
        for case in Case:
            terms = obstruction_terms(case, 0)
            assert list(terms) == [canonical_key(PointedGraph.loops(1))]

    def test_bt_first_order_cancels_in_pairs(self):
        terms = obstruction_terms(Case.BT, 1)
        assert len(terms) == 1
        (contribs,) = terms.values()
        assert sorted(c.coefficient for c in contribs) == [-1, 1]

    def test_second_order_is_not_vacuous(self):
        for case in Case:
            assert sum(len(v) for v in obstruction_terms(case, 2).values()) >= 2

    def test_higher_order_rejected(self):
        with pytest.raises(ValueError):
            low_order_obstruction_check(Case.BT, 3)

    @pytest.mark.parametrize("case", list(Case))
    def test_wrong_phi_sign_is_detected(self, case, monkeypatch):
        monkeypatch.setitem(kb._PHI_SIGN, case, -kb._PHI_SIGN[case])
        assert not all(low_order_obstruction_check(case, d).ok for d in (1, 2))

    def test_wrong_ricci_weight_is_detected(self, monkeypatch):
        monkeypatch.setitem(kb._RICCI, Case.BT, 2)
        assert not low_order_obstruction_check(Case.BT, 1).ok


def test_full_suite():
    report = karabegov_suite(trials=200, seed=0)
    assert report.ok and report.instances > 1000
