import pytest

from oracles import brute_enumerate
from stargraph.enumerate import EnumSpec, count_table, enumerate_graphs, enumerate_n, records
from stargraph.graph import (Family, Stability, canonical_key, graph_from_key, is_semistable,
                             is_stable, strongly_connected)


def test_weight_three_stable():
    assert len(enumerate_graphs(EnumSpec(1, 3))) == 9


def test_weight_zero_is_the_point():
    assert enumerate_graphs(EnumSpec(1, 0)) == ["P1V0:0"]


def test_zero_pointed_weight_one_semistable():
    keys = enumerate_graphs(EnumSpec(0, 1, Stability.SEMISTABLE))
    assert keys == sorted(["P0V1:2", "P0V2:0,1|2,0"])


def test_count_table_low_weights():
    table = count_table(4)
    assert table[Family.ALL] == [1, 1, 2, 9, 61]


@pytest.mark.parametrize("m,k,stability,cap", [
    (1, 1, "stable", 1), (1, 2, "stable", 2), (1, 3, "stable", 3),
    (1, 1, "ss", 2), (0, 1, "ss", 2), (2, 1, "stable", 1), (2, 0, "ss", 1), (0, 2, "stable", 2),
])
def test_matches_exhaustive_generation(m, k, stability, cap):
    st = Stability.STABLE if stability == "stable" else Stability.SEMISTABLE
    got = set(enumerate_graphs(EnumSpec(m, k, st)))
    assert got == brute_enumerate(m, k, stability, cap)


def test_family_nesting():
    table = count_table(5)
    for k in range(6):
        assert table[Family.S][k] <= table[Family.BT][k] <= table[Family.ALL][k]
        assert table[Family.B][k] <= table[Family.ALL][k]


@pytest.mark.parametrize("k", range(5))
def test_stable_bound_is_complete(k):
    assert enumerate_n(1, k + 1, k, Stability.STABLE) == set()


@pytest.mark.parametrize("k", range(3))
def test_semistable_bound_is_complete(k):
    assert enumerate_n(1, 2 * k + 1, k, Stability.SEMISTABLE) == set()


def test_outputs_satisfy_their_class():
    for k in range(5):
        for key in enumerate_graphs(EnumSpec(1, k)):
            g = graph_from_key(key)
            assert is_stable(g) and strongly_connected(g) and canonical_key(g) == key
    for m in (0, 1, 2):
        for k in range(3):
            for key in enumerate_graphs(EnumSpec(m, k, Stability.SEMISTABLE)):
                g = graph_from_key(key)
                assert is_semistable(g) and strongly_connected(g) and canonical_key(g) == key


def test_family_filter():
    keys = enumerate_graphs(EnumSpec(1, 4, family=Family.S))
    assert len(keys) == count_table(4)[Family.S][4]


def test_scon_requires_cap():
    with pytest.raises(ValueError):
        EnumSpec(1, 2, Stability.SCON)
    assert len(enumerate_graphs(EnumSpec(1, 1, Stability.SCON, max_ordinary=2))) > 0


def test_rejects_unsupported_marked_count():
    with pytest.raises(ValueError):
        EnumSpec(4, 1)
    with pytest.raises(ValueError):
        EnumSpec(1, -1)


def test_deterministic_and_sorted():
    a = enumerate_graphs(EnumSpec(1, 4))
    b = enumerate_graphs(EnumSpec(1, 4))
    assert a == b == sorted(a)


def test_records():
    recs = records(EnumSpec(1, 2))
    assert [r.key for r in recs] == enumerate_graphs(EnumSpec(1, 2))
    loops = next(r for r in recs if r.key == "P1V0:2")
    assert (loops.aut, loops.det, loops.families) == (2, 1, ["all", "b", "bt", "s"])
