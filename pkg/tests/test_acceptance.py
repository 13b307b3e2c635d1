"""Acceptance gate: one PASS/FAIL line per criterion, printed even without ``-s``."""

import time
from fractions import Fraction

import pytest

from stargraph.enumerate import TABLE_ROWS, count_table
from stargraph.golden import compare_layer, golden_counts, golden_layer
from stargraph.karabegov import Case, karabegov_suite, low_order_obstruction_check
from stargraph.series import bt_inverse_series, kbw_series
from stargraph.suites import (acyclic_sum_suite, associativity_suite, coefficient_theorem_suite,
                              compose_inverse_suite, inversion_suite, subdivision_sign_suite,
                              substitution_suite)

F = Fraction


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str, seconds: float, limit: float):
        ok = ok and seconds < limit
        status = "PASS" if ok else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {title} ({detail}; {seconds:.2f}s, limit {limit:g}s)")
        assert ok, detail
    return emit


def test_criterion_1_count_table(verdict):
    start = time.perf_counter()
    table = count_table(6)
    elapsed = time.perf_counter() - start
    expected = {"all": [1, 1, 2, 9, 61, 538, 5906], "b": [1, 1, 1, 5, 36, 331, 3704],
                "bt": [1, 1, 2, 6, 24, 112, 620], "s": [1, 1, 1, 2, 5, 15, 54]}
    got = {f.value: table[f] for f in TABLE_ROWS}
    assert golden_counts() == expected
    mismatches = [(f, k) for f in expected for k in range(7) if got[f][k] != expected[f][k]]
    verdict(1, "stable one-pointed counts k<=6", not mismatches,
            f"{28 - len(mismatches)}/28 counts match", elapsed, 600)


def test_criterion_2_bt_inverse_weight_four(verdict):
    start = time.perf_counter()
    layer = bt_inverse_series(4).layer(4)
    elapsed = time.perf_counter() - start
    report = compare_layer("bt_inverse_weight4")
    anchors = {F(1, 24), F(-1, 4), F(-1, 6), F(1), F(-1)} <= set(layer.values())
    ok = report.ok and len(layer) == 24 and anchors and golden_layer("bt_inverse_weight4").terms == layer
    verdict(2, "BT inverse weight-4 layer", ok,
            f"{len(layer)} graphs, {report.passed}/{report.instances} coefficients", elapsed, 1)


def test_criterion_3_kbw_weight_five(verdict):
    start = time.perf_counter()
    layer = kbw_series(5).layer(5)
    elapsed = time.perf_counter() - start
    report = compare_layer("kbw_weight5")
    anchors = {F(1, 120), F(-1, 8), F(-1, 16)} <= set(layer.values())
    ok = report.ok and len(layer) == 15 and anchors and golden_layer("kbw_weight5").terms == layer
    verdict(3, "KBW weight-5 layer", ok,
            f"{len(layer)} graphs, {report.passed}/{report.instances} coefficients", elapsed, 1)


def test_criterion_4_displayed_expansions(verdict):
    start = time.perf_counter()
    names = ["berezin_low", "bt_inverse_low", "kbw_low", "kbw_inverse_low", "bergman_log_weight1"]
    reports = [compare_layer(n) for n in names]
    elapsed = time.perf_counter() - start
    berezin = golden_layer("berezin_low")
    top = set(berezin.layer(3).values())
    anchors = {F(-1, 4), F(-1, 2), F(-1), F(1, 2)} <= top
    bergman = sorted(golden_layer("bergman_log_weight1").terms.values())
    ok = all(r.ok for r in reports) and anchors and bergman == [F(-1, 2), F(1, 2)]
    detail = ", ".join(f"{n} {r.passed}/{r.instances}" for n, r in zip(names, reports))
    verdict(4, "displayed low-order expansions", ok,
            f"{detail}; berezin has {len(berezin)} terms through weight 3", elapsed, 60)


def test_criterion_5_identity_suites(verdict):
    start = time.perf_counter()
    reports = [
        inversion_suite(3, 500, 0),
        acyclic_sum_suite(3, 500, 0),
        subdivision_sign_suite(3),
        coefficient_theorem_suite(3, 1000, 0, max_vertices=7, max_multiplicity=3),
        substitution_suite(3),
    ]
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{r.suite} {r.passed}/{r.instances}" for r in reports)
    verdict(5, "identity suites", all(r.ok for r in reports), detail, elapsed, 300)


def test_criterion_6_composition(verdict):
    start = time.perf_counter()
    reports = [compose_inverse_suite(3, 3), associativity_suite(2, 4)]
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{r.suite} {r.passed}/{r.instances}" for r in reports)
    verdict(6, "composition and associativity", all(r.ok for r in reports), detail, elapsed, 300)


def test_criterion_7_karabegov(verdict):
    start = time.perf_counter()
    report = karabegov_suite(trials=200, seed=0)
    fixtures = [low_order_obstruction_check(c, d) for c in Case for d in range(3)]
    elapsed = time.perf_counter() - start
    ok = report.ok and all(r.ok for r in fixtures) and len(fixtures) == 9
    verdict(7, "Karabegov kernels", ok,
            f"{report.passed}/{report.instances} checks, {sum(r.ok for r in fixtures)}/9 fixtures",
            elapsed, 300)
