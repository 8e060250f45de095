from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from rauzy.core import SimplexPoint
from rauzy.iet import classify
from rauzy.novikov import (DegenerateDirection, HitSingularVertex, build_pl_surface, direction3, first_return_iet,
                           gvec, leaf_direction, render_svg, side_measures, symmetry_check, trace_pl_leaf)

from conftest import simplex_points

P = lambda a, b, c: SimplexPoint(F(a), F(b), F(c))
BARY = P(F(1, 3), F(1, 3), F(1, 3))


def test_complex():
    cx = build_pl_surface()
    assert len(cx.faces) == 12 and len(cx.edges) == 24 and len(cx.vertices) == 8
    assert cx.euler == -4 and cx.genus == 3
    assert cx.orientable and cx.vertex_links_closed
    assert set(cx.vertex_degrees.values()) == {6}


def test_leaf_direction_barycenter():
    for f in build_pl_surface().faces:
        if f.normal == 2:
            u, v = leaf_direction(f, BARY)
            assert u == -v and abs(u) == F(2, 3)


def test_vertex_lambda_rejected():
    f = build_pl_surface().faces[0]
    with pytest.raises(DegenerateDirection):
        leaf_direction(f, P(1, 0, 0))
    with pytest.raises(DegenerateDirection):
        first_return_iet(P(0, 1, 0))


@settings(max_examples=40, deadline=None)
@given(simplex_points(max_den=60))
def test_form_vanishes_on_leaves(lam):
    if lam.is_vertex():
        return
    g = gvec(lam)
    for f in build_pl_surface().faces:
        v = direction3(lam, f.normal, f.corner)
        assert v[f.normal] == 0
        assert sum(a * b for a, b in zip(g, v)) == 0
        assert side_measures(f, lam) == tuple(g[k] for k in range(3) if k != f.normal)


def test_rational_leaf_closes():
    lam = P(F(2, 5), F(7, 20), F(1, 4))
    assert classify(lam).verdict == "FiniteRegularOrbit"
    t = trace_pl_leaf(lam, (0, (F(1, 3), F(1, 7))), 2000)
    assert t.periodic and t.audit_ok


def test_boundary_leaf_in_subcomplex():
    for lam in (P(F(1, 2), F(1, 2), 0), P(F(2, 3), F(1, 3), 0), P(0, F(3, 7), F(4, 7))):
        for fi in (0, 5, 9):
            t = trace_pl_leaf(lam, (fi, (F(1, 3), F(1, 7))), 5000)
            assert t.periodic and t.audit_ok and len(t.faces_visited) < 12


def test_vertex_start_rejected():
    with pytest.raises(HitSingularVertex):
        trace_pl_leaf(BARY, (0, (0, 0)), 10)


def test_first_return_examples():
    r = first_return_iet(P(F(1, 2), F(1, 4), F(1, 4)))
    assert r.match
    r = first_return_iet(BARY)
    assert r.match and r.length_vector == (F(1, 6),) * 6 and r.rotation_as_predicted


@settings(max_examples=15, deadline=None)
@given(simplex_points(max_den=30, interior=True))
def test_first_return_matches(lam):
    r = first_return_iet(lam)
    assert r.match and r.rotation_as_predicted and not r.reflected
    assert r.length_vector == tuple(x / 2 for x in lam for _ in range(2))


def test_symmetries():
    rep = symmetry_check(P(F(2, 5), F(7, 20), F(1, 4)))
    assert rep.ok
    assert rep.orientation_sign == {"translate": -1, "negate": -1, "both": 1}


def test_svg_deterministic(tmp_path):
    a = render_svg(BARY, [(0, (F(1, 3), F(1, 7)))])
    b = render_svg(BARY, [(0, (F(1, 3), F(1, 7)))], out=tmp_path / "s.svg")
    assert a == b == (tmp_path / "s.svg").read_text()
    assert a.startswith("<svg")
