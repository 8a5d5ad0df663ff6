import math
import random

import pytest
from hypothesis import given

from trispec import graph as gc
from trispec.checks import (
    CHECK_IDS,
    Status,
    Tolerances,
    check_aes_lemma,
    check_bn_conjecture,
    check_classical,
    check_efgw,
    check_erdos_edge_bound,
    check_hoffman_smith,
    check_hoffman_smith_all,
    check_nikiforov_sq,
    check_nosal,
    check_prop_balanced,
    check_prop_monotone,
    check_spectral_erdos_order,
    check_spectral_erdos_size,
    check_triangle_free_sum,
    check_zls,
    classical_bounds,
    internal_path,
    is_conjecture,
    resolve_check,
)
from trispec.families import ExtremalFamily as F
from trispec.graph import Graph

from .conftest import graphs, random_connected_graph

S = Status
TWO_P2_K1 = gc.add_isolated(Graph(4, [(0, 1), (2, 3)]), 1)
OCTAHEDRON = gc.blow_up(gc.complete(3), (2, 2, 2))


def test_check_ids_are_stable():
    assert set(CHECK_IDS) == {
        "bn", "tf-sum", "nosal", "nik-sq", "erdos-size", "erdos-order", "edge-bound",
        "aes", "hoffman-smith", "prop-monotone", "prop-balanced", "zls", "efgw", "classical"}


def test_default_tolerances():
    tol = Tolerances()
    assert (tol.slack, tol.window, tol.zero_rel) == (1e-9, 1e-7, 1e-8)


# -- triangle-free sum and the BN family ------------------------------------

def test_bn_examples():
    v = check_bn_conjecture(gc.complete_bipartite(2, 2), 2)
    assert (v.status, v.family) == (S.EQUALITY, F.BLOWUP_P2K1)
    v = check_bn_conjecture(gc.cycle(5), 2)
    assert v.status is S.HOLDS
    assert v.lhs == pytest.approx(4 + (2 * math.cos(2 * math.pi / 5)) ** 2)
    assert check_bn_conjecture(gc.complete(4), 2).status is S.NOT_APPLICABLE


def test_bn_general_r():
    # complete 3-partite K_{2,2,2}: 16 + 0 = 2/3 * 24
    v = check_bn_conjecture(OCTAHEDRON, 3)
    assert v.status is S.EQUALITY and v.family is None
    assert check_bn_conjecture(gc.complete(4), 3).status is S.NOT_APPLICABLE
    assert check_bn_conjecture(gc.complete(3), 3).status is S.NOT_APPLICABLE  # n < 4
    assert check_bn_conjecture(gc.petersen(), 3).status is S.HOLDS
    with pytest.raises(ValueError):
        check_bn_conjecture(gc.cycle(5), 1)


@pytest.mark.parametrize("g, family", [
    (gc.path(5), F.BLOWUP_P5K1),
    (TWO_P2_K1, F.BLOWUP_2P2K1),
    (gc.p4k1(), F.BLOWUP_P4K1),
    (gc.complete_bipartite(3, 3), F.BLOWUP_P2K1),
    (gc.blow_up(gc.p5k1(), (2, 1, 3, 1, 2, 2)), F.BLOWUP_P5K1),
])
def test_tf_sum_equality_cases(g, family):
    v = check_triangle_free_sum(g)
    assert v.status is S.EQUALITY
    assert v.family is family
    assert abs(v.margin) < 1e-7


def test_tf_sum_reports_strict_reading():
    assert check_triangle_free_sum(gc.p2k1()).witness["strict_reading"] is True
    assert check_triangle_free_sum(gc.complete_bipartite(2, 2)).witness["strict_reading"] is False


def test_tf_sum_other_cases():
    v = check_triangle_free_sum(gc.cycle(5))
    assert v.status is S.HOLDS and v.margin == pytest.approx(5 - 4 - 0.381966011250105)
    assert check_triangle_free_sum(gc.complete(3)).status is S.NOT_APPLICABLE
    assert check_triangle_free_sum(gc.path(2)).status is S.NOT_APPLICABLE
    assert check_triangle_free_sum(gc.cycle(7)).status is S.HOLDS


# -- Nosal, Nikiforov ----------------------------------------------------------

def test_nosal_and_nikiforov_examples():
    k33 = gc.complete_bipartite(3, 3)
    for check in (check_nosal, check_nikiforov_sq):
        v = check(k33)
        assert (v.status, v.family) == (S.EQUALITY, F.BLOWUP_P2K1)
        assert check(gc.cycle(5)).status is S.HOLDS
        assert check(gc.path(4)).status is S.HOLDS
        assert check(gc.complete(3)).status is S.NOT_APPLICABLE
    assert check_nosal(gc.path(4)).lhs == pytest.approx((1 + math.sqrt(5)) / 2)


# -- spectral Erdos ------------------------------------------------------------

def test_erdos_size_examples():
    v = check_spectral_erdos_size(gc.cycle(5))
    assert (v.status, v.family) == (S.EQUALITY, F.C5_PLUS_ISOLATED)
    v = check_spectral_erdos_size(gc.add_isolated(gc.cycle(5), 2))
    assert v.status is S.EQUALITY
    v = check_spectral_erdos_size(gc.subdivided_bipartite(2, 3))
    assert v.status is S.HOLDS
    assert v.lhs == pytest.approx(2.391382380630901, abs=1e-12)
    assert v.rhs == pytest.approx(math.sqrt(6))
    assert check_spectral_erdos_size(gc.cycle(7)).status is S.HOLDS
    assert check_spectral_erdos_size(gc.cycle(6)).status is S.NOT_APPLICABLE
    assert check_spectral_erdos_size(gc.complete(4)).status is S.NOT_APPLICABLE


def test_erdos_order_examples():
    v = check_spectral_erdos_order(gc.cycle(5))
    assert (v.status, v.family) == (S.EQUALITY, F.SUBDIVIDED_BALANCED_BIPARTITE)
    assert v.rhs == 2.0
    v = check_spectral_erdos_order(gc.subdivided_bipartite(2, 3))
    assert v.status is S.EQUALITY
    assert v.rhs == pytest.approx(2.391382380630901, abs=1e-11)
    v = check_spectral_erdos_order(gc.cycle(7))
    assert v.status is S.HOLDS and v.rhs == pytest.approx(2.903211925911553, abs=1e-11)
    assert check_spectral_erdos_order(gc.complete_bipartite(2, 2)).status is S.NOT_APPLICABLE
    # unbalanced S(K_{2,4}) stays below the balanced threshold at n=7
    assert check_spectral_erdos_order(gc.subdivided_bipartite(2, 4)).status is S.HOLDS


def test_edge_bound_examples():
    v = check_erdos_edge_bound(gc.subdivided_bipartite(3, 3), 1)
    assert (v.status, v.lhs, v.rhs) == (S.EQUALITY, 10.0, 10.0)
    assert v.family is F.SUBDIVIDED_BALANCED_BIPARTITE
    assert check_erdos_edge_bound(gc.cycle(5), 1).status is S.EQUALITY
    v = check_erdos_edge_bound(gc.cycle(7), 2)
    assert (v.status, v.lhs, v.rhs) == (S.EQUALITY, 7.0, 7.0)
    assert check_erdos_edge_bound(gc.cycle(5), 2).status is S.NOT_APPLICABLE
    assert check_erdos_edge_bound(gc.complete(3), 1).status is S.NOT_APPLICABLE
    assert check_erdos_edge_bound(gc.cycle(9), 1).status is S.HOLDS


def test_edge_bound_half_integer_bound():
    # n = 6, k = 1: ((6-1)/2)^2 + 1 = 7.25, compared exactly
    v = check_erdos_edge_bound(gc.subdivided_bipartite(2, 3), 1)
    assert (v.status, v.lhs, v.rhs) == (S.HOLDS, 7.0, 7.25)


def test_aes_examples():
    v = check_aes_lemma(gc.cycle(5), 2)
    assert v.status is S.HOLDS and v.lhs == v.rhs == 10.0
    assert v.witness["tight"] is True
    assert check_aes_lemma(gc.petersen(), 2).status is S.HOLDS
    v = check_aes_lemma(gc.complete(3), 1)
    assert v.status is S.HOLDS and v.lhs == v.rhs == 6.0
    assert check_aes_lemma(gc.complete_bipartite(3, 3), 2).status is S.NOT_APPLICABLE


def test_aes_as_stated_fails_for_k1():
    # K4: odd girth 3, delta 3 > 2*4/3; the statement needs k >= 2
    v = check_aes_lemma(gc.complete(4), 1)
    assert v.status is S.VIOLATED
    assert (v.lhs, v.rhs) == (9.0, 8.0)


# -- Hoffman-Smith ---------------------------------------------------------------

def test_internal_path_detection():
    k23 = gc.complete_bipartite(2, 3)
    assert internal_path(k23, 0, 2) == [0, 2, 1]
    assert internal_path(gc.cycle(5), 0, 1) is None          # no degree >= 3 vertex
    assert internal_path(gc.complete_bipartite(1, 3), 0, 1) is None
    y = gc.y_graph(8)
    assert internal_path(y, 1, 2) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        internal_path(y, 0, 3)


def test_hoffman_smith_examples():
    v = check_hoffman_smith(gc.complete_bipartite(3, 3), 0, 3)
    assert v.status is S.HOLDS and v.lhs == pytest.approx(2.903211925911553, abs=1e-10)
    assert v.rhs == pytest.approx(3)
    v = check_hoffman_smith(gc.complete_bipartite(3, 4), 0, 3)
    assert v.status is S.HOLDS and v.rhs == pytest.approx(math.sqrt(12))
    v = check_hoffman_smith(gc.y_graph(6), 0, 1)
    assert v.status is S.EQUALITY
    assert v.lhs == pytest.approx(2, abs=1e-9) and v.rhs == pytest.approx(2, abs=1e-9)
    assert check_hoffman_smith(gc.complete_bipartite(1, 3), 0, 1).status is S.NOT_APPLICABLE


def test_hoffman_smith_random(rng):
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(4, 9), 0.4)
        v = check_hoffman_smith_all(g)
        assert v.status in (S.HOLDS, S.NOT_APPLICABLE, S.EQUALITY)


# -- propositions ---------------------------------------------------------------

@pytest.mark.parametrize("s, t", [(1, 1), (1, 2), (2, 2)])
def test_prop_monotone_examples(s, t):
    v = check_prop_monotone(s, t)
    assert v.status is S.HOLDS and v.margin > 1e-10


def test_prop_monotone_frozen_values():
    v = check_prop_monotone(1, 1)
    assert v.rhs == pytest.approx(2.903211925911553, abs=1e-11)
    assert v.lhs == pytest.approx(2.75153207154753, abs=1e-11)
    with pytest.raises(ValueError):
        check_prop_monotone(2, 1)


def test_prop_balanced_examples():
    v = check_prop_balanced(9)
    assert v.status is S.HOLDS and v.witness["maximizer"] == [4, 4]
    assert v.rhs == pytest.approx(3.888969400889307, abs=1e-11)
    assert v.lhs == pytest.approx(3.766234063550978, abs=1e-11)
    assert check_prop_balanced(10).witness["maximizer"] == [4, 5]
    v = check_prop_balanced(7)
    assert v.status is S.HOLDS and v.witness["maximizer"] == [3, 3] and v.lhs is None
    with pytest.raises(ValueError):
        check_prop_balanced(6)


# -- conjectures -------------------------------------------------------------------

def test_zls_examples():
    v = check_zls(gc.complete_bipartite(1, 5), 1)
    assert (v.status, v.family) == (S.EQUALITY, F.STAR_CLIQUE_JOIN)
    assert v.lhs == pytest.approx(math.sqrt(5))
    v = check_zls(gc.complete(3), 1)
    assert v.status is S.CANDIDATE
    assert v.rhs == pytest.approx(math.sqrt(3))
    assert v.witness["missing_cycle_lengths"] == [4]
    assert v.witness["below_size_regime"] is True
    v = check_zls(gc.cycle(4), 1)
    assert v.status is S.CANDIDATE and v.witness["missing_cycle_lengths"] == [3]
    assert check_zls(gc.complete(4), 1).status is S.HOLDS
    assert check_zls(gc.path(5), 1).status is S.HOLDS


def test_zls_applicability():
    assert check_zls(gc.add_isolated(gc.cycle(4), 1), 1).status is S.NOT_APPLICABLE
    assert check_zls(gc.cycle(4), 3).status is S.NOT_APPLICABLE   # 3 does not divide 4
    assert check_zls(gc.star_clique_join(3, 2), 3).status is S.EQUALITY
    with pytest.raises(ValueError):
        check_zls(gc.cycle(4), 2)


def test_efgw_examples():
    for g in (gc.complete_bipartite(1, 3), gc.complete(3), gc.path(4)):
        v = check_efgw(g)
        assert v.status is S.EQUALITY
        assert v.lhs == g.order - 1
    assert check_efgw(gc.petersen()).status is S.HOLDS
    assert check_efgw(Graph(3, [(0, 1)])).status is S.NOT_APPLICABLE


@given(graphs(max_order=8))
def test_conjectures_never_report_violated(g):
    for verdict in (check_bn_conjecture(g, 3), check_bn_conjecture(g, 4),
                    check_zls(g, 1), check_zls(g, 3), check_efgw(g)):
        assert verdict.status is not S.VIOLATED


# -- classical bounds ---------------------------------------------------------------

def test_classical_examples():
    k4 = classical_bounds(gc.complete(4))
    assert k4["stanley"].status is S.EQUALITY and k4["stanley"].rhs == pytest.approx(3)
    k3 = classical_bounds(gc.complete(3))
    assert k3["nikiforov"].status is S.EQUALITY and k3["nikiforov"].rhs == pytest.approx(2)
    c5 = classical_bounds(gc.cycle(5))
    assert c5["hong"].status is S.HOLDS and c5["hong"].rhs == pytest.approx(math.sqrt(6))
    assert classical_bounds(gc.p2k1())["hong"].status is S.NOT_APPLICABLE
    assert check_classical(gc.cycle(5)).status is S.HOLDS
    assert check_classical(gc.complete(4)).status is S.EQUALITY


# -- verdict invariants over random graphs --------------------------------------

PROVEN = ["tf-sum", "bn:2", "nosal", "nik-sq", "erdos-size", "erdos-order", "edge-bound:1",
          "edge-bound:2", "aes:2", "aes:3", "classical", "hoffman-smith"]


@given(graphs(max_order=9))
def test_proven_checks_hold_and_verdicts_are_consistent(g):
    tol = Tolerances()
    for name in PROVEN:
        v = resolve_check(name).func(g)
        assert v.status is not S.VIOLATED, (name, v)
        if v.status is S.EQUALITY:
            assert abs(v.margin) < tol.window
        if v.status is S.HOLDS and v.margin is not None and name != "hoffman-smith":
            assert v.margin > -tol.slack


def test_resolve_check_names():
    assert resolve_check("edge-bound").name == "edge-bound:1"
    assert resolve_check("aes").name == "aes:2"
    assert resolve_check("bn:3").conjecture and not resolve_check("bn").conjecture
    assert is_conjecture("zls:1") and is_conjecture("efgw") and not is_conjecture("tf-sum")
    for bad in ("nope", "zls:2", "nosal:1", "bn:1"):
        with pytest.raises((KeyError, ValueError)):
            resolve_check(bad)


def test_random_graphs_hold_at_larger_order():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(9, 14)
        g = Graph(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < 0.25])
        for name in PROVEN:
            assert resolve_check(name).func(g).status is not S.VIOLATED
