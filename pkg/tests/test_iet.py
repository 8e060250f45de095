import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rauzy.core import BARYCENTER, SimplexPoint
from rauzy.gasket import apply_f_inv, directing_word, first_letter, point_from_word
from rauzy.iet import (IetMap, NoDominantLetter, ScaledIet, classify, classify_word, eval_T, induction_run,
                       induction_window, orbit, period3_window, rauzy_induction_step)

from conftest import circle_points, simplex_points

P = lambda a, b, c: SimplexPoint(F(a), F(b), F(c))
L1 = P(F(1, 2), F(1, 4), F(1, 4))
L3 = P(F(2, 5), F(7, 20), F(1, 4))


def brute_T(lam, x):
    """Direct reading of the six-branch definition."""
    l1, l2, l3 = lam
    cuts = [0, l1 / 2, l1, l1 + l2 / 2, l1 + l2, l1 + l2 + l3 / 2, 1]
    shifts = [(1 + l1) / 2, (1 - l1) / 2, (1 + l2) / 2, (1 - l2) / 2, (1 + l3) / 2, (1 - l3) / 2]
    for k in range(6):
        if cuts[k] <= x < cuts[k + 1]:
            return (x + shifts[k]) % 1


def test_eval_examples():
    assert eval_T(L1, 0) == F(3, 4)
    assert eval_T(L1, F(1, 4)) == F(1, 2)


@given(simplex_points(), circle_points())
def test_eval_matches_definition_and_inverse(lam, x):
    T = IetMap(lam)
    assert T(x) == brute_T(lam, x)
    assert T.inverse(T(x)) == x


@given(simplex_points(interior=True))
def test_branch_images_tile_circle(lam):
    T = IetMap(lam)
    bp, off = T.breakpoints, T.offsets
    imgs = sorted(((bp[k] + off[k]) % 1, bp[k + 1] - bp[k]) for k in range(6))
    pos = imgs[0][0]
    for a, length in imgs:
        assert a == pos % 1
        pos += length
    assert pos - imgs[0][0] == 1


@given(simplex_points(), circle_points())
def test_involution_part(lam, x):
    T = IetMap(lam)
    assert T.involution_part(T.involution_part(x)) == x or x in T.singular_points() or (
        (T(x) - F(1, 2)) % 1 in T.singular_points())


def test_orbit_examples():
    o = orbit(IetMap(L3), F(1, 8), 3)
    assert o.points[-1] == F(1, 8) and o.period == 3
    assert orbit(IetMap(BARYCENTER), 0, 5).is_singular_orbit
    assert orbit(IetMap(BARYCENTER), F(1, 7), 0).points == [F(1, 7)]


def first_return_oracle(lam, i, u):
    """First return to the letter-i window by direct iteration of the definition."""
    a, li, r = induction_window(lam, i)
    y = (a + li * ((u + r) % 1)) % 1
    while True:
        y = brute_T(lam, y)
        if a <= y < a + li:
            return ((y - a) / li - r) % 1


def test_induction_example():
    lam = P(F(3, 5), F(1, 5), F(1, 5))
    st_ = rauzy_induction_step(IetMap(lam))
    assert st_.letter == 1 and st_.T.lam == BARYCENTER and st_.scale == F(3, 5)
    assert induction_window(lam, 1) == (0, F(3, 5), F(1, 3))
    rng = random.Random(7)
    for _ in range(50):
        u = F(rng.randrange(10**4), 10**4)
        assert first_return_oracle(lam, 1, u) == st_.T(u)
    with pytest.raises(NoDominantLetter):
        rauzy_induction_step(IetMap(P(F(2, 5), F(2, 5), F(1, 5))))


@settings(max_examples=60, deadline=None)
@given(simplex_points(max_den=120), st.lists(circle_points(), min_size=5, max_size=5))
def test_induction_conjugates_to_renormalised_map(lam, us):
    i, _ = first_letter(lam)
    if i is None or lam.is_vertex():
        return
    st_ = rauzy_induction_step(IetMap(lam))
    assert st_.letter == i == directing_word(lam, 1)[0].letters[0]
    assert st_.T.lam == apply_f_inv(i, lam)
    for u in us:
        assert first_return_oracle(lam, i, u) == st_.T(u)


def test_cumulative_scale():
    lam = point_from_word([1, 2])
    steps = induction_run(IetMap(lam), 2)
    assert [s.letter for s in steps] == [1, 2]
    assert steps[0].scale * steps[1].scale == lam.l1 * apply_f_inv(1, lam).l2


@settings(max_examples=200)
@given(simplex_points(max_den=300, interior=True), st.integers(1, 999))
def test_period3_window(lam, t):
    if max(lam) >= F(1, 2):
        return
    lo, hi = period3_window(lam)
    x = (lo + (hi - lo) * F(t, 1000)) % 1
    T = IetMap(lam)
    assert T(T(T(x))) == x


def test_period3_window_sorted_case():
    # λ1 ≥ λ2 ≥ λ3: the window is ((λ1−λ3)/2, λ2/2)
    assert period3_window(L3) == (F(3, 40), F(7, 40))


def test_classify_examples():
    c = classify(L3)
    assert c.verdict == "FiniteRegularOrbit" and c.witness == F(1, 8) and c.period == 3
    assert classify(BARYCENTER).verdict == "FiniteRegularOrbit"
    # rational λ in the boundary class still has finite regular orbits (ledgered)
    c = classify(L1)
    assert c.verdict == "FiniteRegularOrbit" and c.boundary_point == P(0, F(1, 2), F(1, 2))
    assert orbit(IetMap(L1), c.witness, c.period).points[-1] == c.witness


@given(simplex_points(max_den=80))
def test_classify_witness_is_periodic(lam):
    c = classify(lam)
    if c.witness is not None:
        o = orbit(IetMap(lam), c.witness, c.period)
        assert o.points[-1] == c.witness and not o.is_singular_orbit


def test_classify_word():
    assert classify_word((1, 2, 3), (1, 2, 3)).verdict == "MinimalCertified"
    assert classify_word((1,), (1, 2)).verdict == "NonMinimalNoFiniteOrbit"
    assert classify_word((), (3,)).verdict == "FiniteRegularOrbit"


@given(simplex_points(), circle_points(), st.booleans())
def test_scaled_iet_agrees(lam, x, tilde):
    T = IetMap(lam, tilde)
    S = ScaledIet(T, x)
    X = S.to_int(x)
    y = x
    for _ in range(5):
        X = S.step(X)
        y = T(y)
        assert F(X, S.D) == y
