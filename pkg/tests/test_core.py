from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rauzy.core import (BARYCENTER, BadLetter, InputError, MalformedRational, NotNormalized, SimplexPoint,
                        ZeroVector, adjugate3, fmt_rational, int_det, int_matrix, lift_fhat,
                        normalize_projective, parse_rational, parse_word, quadratic_q)


def test_parse_rational_forms():
    assert parse_rational("3/5") == F(3, 5)
    assert parse_rational("7") == 7
    assert parse_rational("-2/4") == F(-1, 2)


def test_malformed_rational_reports_offset():
    with pytest.raises(MalformedRational) as e:
        SimplexPoint.parse("1/3 1/x 1/3")
    assert e.value.offset == 4
    with pytest.raises(MalformedRational):
        parse_rational("1/0")


def test_fmt_round_trip():
    for x in (F(0), F(1), F(3, 5), F(-7, 9)):
        assert parse_rational(fmt_rational(x)) == x
    assert fmt_rational(F(4, 2)) == "2"


def test_simplex_point_validation():
    with pytest.raises(NotNormalized):
        SimplexPoint.parse("1/3 1/3 1/2")
    with pytest.raises(InputError):
        SimplexPoint(F(-1, 2), F(1), F(1, 2))
    assert SimplexPoint.parse("2 1 1", normalize=True) == SimplexPoint(F(1, 2), F(1, 4), F(1, 4))
    assert str(BARYCENTER) == "1/3 1/3 1/3"


@pytest.mark.parametrize("v,out", [((1, 1, 1), (F(1, 3),) * 3), ((2, 1, 1), (F(1, 2), F(1, 4), F(1, 4))),
                                   ((3, 1, 1), (F(3, 5), F(1, 5), F(1, 5)))])
def test_normalize_projective(v, out):
    assert normalize_projective(v).as_tuple() == out


def test_normalize_zero_vector():
    with pytest.raises(ZeroVector):
        normalize_projective((0, 0, 0))


@pytest.mark.parametrize("m,q", [((0, 0, 0), 0), ((1, 1, 1), -3), ((1, 1, 0), 0)])
def test_quadratic_q(m, q):
    assert quadratic_q(m) == q


@pytest.mark.parametrize("i,m,out", [(1, (0, 1, 1), (0, 1, 1)), (1, (1, 1, 0), (1, 2, 1)), (3, (1, 1, 1), (2, 2, 1))])
def test_lift_fhat(i, m, out):
    assert lift_fhat(i, m) == out


@given(st.sampled_from([1, 2, 3]), st.tuples(*[st.integers(-50, 50)] * 3))
def test_lift_fhat_drops_q_by_4mi2(i, m):
    assert quadratic_q(lift_fhat(i, m)) - quadratic_q(m) == -4 * m[i - 1] ** 2


def test_parse_word():
    assert parse_word("1231") == (1, 2, 3, 1)
    with pytest.raises(BadLetter):
        parse_word("124")


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_int_det_and_adjugate(rows):
    m = int_matrix(rows)
    d = int_det(m)
    assert d == round(np.linalg.det(np.array(rows, dtype=float)))
    assert (m.dot(adjugate3(m)) == d * np.eye(3, dtype=int)).all()
