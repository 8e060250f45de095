import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from rauzy.core import SimplexPoint
from rauzy.gasket import point_from_word
from rauzy.iet import IetMap
from rauzy.suspension import (DegenerateSystem, EpsilonTooLarge, HitSingularity, build_double_suspension,
                              check_half_edge_rule, count_ends, default_transversal, doubled_T, enhanced_S_lambda,
                              poincare_map, poincare_return, trace_leaf)

from conftest import circle_points, simplex_points

P = lambda a, b, c: SimplexPoint(F(a), F(b), F(c))


def test_surface_topology():
    C = build_double_suspension(enhanced_S_lambda(P(F(1, 3), F(1, 3), F(1, 3))))
    assert (C.euler, C.genus, C.strips) == (-4, 3, 6)
    assert [s["prongs"] for s in C.singularities] == [6, 6]
    assert C.gluing_audit


def test_suspension_errors():
    E = enhanced_S_lambda(P(F(1, 3), F(1, 3), F(1, 3)))
    with pytest.raises(EpsilonTooLarge):
        build_double_suspension(E, F(1, 12))
    with pytest.raises(DegenerateSystem):
        build_double_suspension(enhanced_S_lambda(P(1, 0, 0)))


@settings(max_examples=25, deadline=None)
@given(simplex_points(max_den=40, interior=True))
def test_topology_constant_on_interior(lam):
    C = build_double_suspension(enhanced_S_lambda(lam))
    assert C.euler == -4 and C.genus == 3


def test_poincare_example():
    lam = P(F(1, 2), F(1, 4), F(1, 4))
    E = enhanced_S_lambda(lam)
    assert poincare_return(E, default_transversal(lam), 0) == F(3, 2)
    assert 2 * IetMap(lam)(0) == F(3, 2)


@settings(max_examples=40, deadline=None)
@given(simplex_points(max_den=40, interior=True))
def test_poincare_is_doubled_T(lam):
    E = enhanced_S_lambda(lam)
    gamma = default_transversal(lam)
    pm = poincare_map(E, gamma)
    assert pm.total == 2
    rng = random.Random(hash(lam))
    for _ in range(50):
        s = F(rng.randrange(0, 2000), 1000)
        assert pm(s) == doubled_T(lam, s) == poincare_return(E, gamma, s)


def test_leaf_closes_for_period3():
    lam = P(F(2, 5), F(7, 20), F(1, 4))
    t = trace_leaf(enhanced_S_lambda(lam), (0, F(1, 8)), 100)
    assert t.periodic and t.audit_ok


def test_separatrix_hits_singularity():
    lam = P(F(2, 5), F(7, 20), F(1, 4))
    with pytest.raises(HitSingularity):
        trace_leaf(enhanced_S_lambda(lam), (0, lam[0]), 10)


@settings(max_examples=30, deadline=None)
@given(simplex_points(max_den=50, interior=True), circle_points(max_den=997))
def test_half_edge_rule(lam, x):
    E = enhanced_S_lambda(lam)
    try:
        t = trace_leaf(E, (1, x), 60)
    except HitSingularity:
        return
    assert t.audit_ok and check_half_edge_rule(E, t.pairs)


def test_ends():
    assert count_ends(enhanced_S_lambda(P(F(1, 3), F(1, 3), F(1, 3))), F(1, 7), 32).ends == "NotApplicable"
    rng = random.Random(2)
    E = enhanced_S_lambda(point_from_word([1, 2, 3] * 6))
    for _ in range(4):
        r = count_ends(E, F(rng.randrange(1, 10**6), 10**6), 64)
        assert r.ends in (1, 2) and r.ends == r.leaf_count


def test_two_ended_orbit_has_two_leaves():
    E = enhanced_S_lambda(point_from_word([1, 2] * 9))
    r = count_ends(E, F(123457, 10**6), 64)
    assert r.ends == 2 and r.boundary_cycles == r.leaf_count == 2


def test_gap_leaf_is_a_closed_circle():
    t = trace_leaf(enhanced_S_lambda(P(F(2, 5), F(2, 5), F(1, 5))), (1, F(1, 2)), 10)
    assert t.periodic and t.period == 0 and t.pairs == []


def test_end_census():
    from rauzy.suspension import end_census
    E = enhanced_S_lambda(point_from_word([1, 2] * 9))
    c = end_census(E, [F(k, 97) for k in range(1, 6)], 64)
    assert c.samples == 5 and c.one_ended + c.two_ended + c.flagged == 5
    assert c.d2_fraction == 1.0
