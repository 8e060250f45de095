import math
import warnings
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from rauzy.core import SimplexPoint
from rauzy.gasket import point_from_word
from rauzy.iet import IetMap
from rauzy.words import (InsufficientLength, code, complexity_profile, letter_frequencies, recurrence_check,
                         word_from_string)

from conftest import circle_points, simplex_points

P = lambda a, b, c: SimplexPoint(F(a), F(b), F(c))


def test_code_examples():
    assert str(code(P(F(1, 2), F(1, 4), F(1, 4)), F(1, 8), 1)) == "1"
    w = str(code(P(F(2, 5), F(7, 20), F(1, 4)), F(1, 8), 30))
    assert w == w[:3] * 10


def test_singular_orbit_codings_differ():
    lam = P(F(1, 2), F(1, 4), F(1, 4))
    a, b = code(lam, F(1, 2), 5), code(lam, F(1, 2), 5, tilde=True)
    assert a.letters[0] == 2 and b.letters[0] == 1


@settings(max_examples=50)
@given(simplex_points(max_den=60), circle_points(max_den=997))
def test_code_matches_direct_iteration(lam, x):
    T = IetMap(lam)
    c = code(lam, x, 40)
    y = x
    for k in range(40):
        assert c.letters[k] == T.letter_of(y)
        y = T(y)


def test_ar_complexity():
    lam = point_from_word([int(c) for c in "123123123123"])
    prof = complexity_profile(code(lam, F(1, 10), 10**5), 20)
    assert prof.p == [2 * n + 1 for n in range(1, 21)]
    assert prof.right_special == [1] * 20 and prof.left_special == [1] * 20


def test_periodic_complexity():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientLength)
        prof = complexity_profile("123" * 100, 10)
    assert prof.p == [3] * 10


def test_boundary_class_complexity_bounded():
    c = code(P(F(1, 2), F(1, 4), F(1, 4)), F(1, 7), 5000)
    prof = complexity_profile(c, 20)
    assert all(p <= 2 * n + 1 for n, p in enumerate(prof.p, 1))


def test_short_coding_warns():
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        complexity_profile("1231", 2)
    assert any(issubclass(w.category, InsufficientLength) for w in rec)


@settings(max_examples=40, deadline=None)
@given(simplex_points(max_den=50), circle_points(max_den=97))
def test_complexity_monotone_and_bounded(lam, x):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientLength)
        prof = complexity_profile(code(lam, x, 400), 6)
    assert all(a <= b for a, b in zip(prof.p, prof.p[1:]))
    assert all(p <= 3 ** n for n, p in enumerate(prof.p, 1))


def test_frequencies():
    assert letter_frequencies(word_from_string("123" * 7)) == (F(1, 3),) * 3
    assert letter_frequencies(word_from_string("2")) == (0, 1, 0)
    lam = point_from_word([1, 2, 3, 3, 1, 2, 1, 3, 2, 1, 1, 3])
    N = 10**5
    fr = letter_frequencies(code(lam, F(1, 10), N))
    assert all(abs(a - b) <= 2 / math.sqrt(N) for a, b in zip(fr, lam))


def test_recurrence():
    rep = recurrence_check("123" * 50, 6)
    assert all(rep.max_gap[n] <= 3 * max(n, 1) for n in range(7))
    assert rep.max_gap[0] == 1
    w = []
    for j in range(1, 9):
        w += [(j - 1) % 3 + 1] * 2 ** j
    gaps = [recurrence_check(w[: 2 ** (m + 1)], 2).max_gap[2] for m in range(3, 9)]
    assert gaps == sorted(gaps) and gaps[-1] > gaps[0]


@settings(max_examples=50)
@given(simplex_points(max_den=40, interior=True), circle_points(max_den=991))
def test_regular_orbits_code_the_same(lam, x):
    T = IetMap(lam)
    y = x
    for _ in range(30):
        if y in T.singular_points():
            return
        y = T(y)
    assert code(lam, x, 30).letters == code(lam, x, 30, tilde=True).letters
