from fractions import Fraction

from hypothesis import strategies as st

from rauzy.core import SimplexPoint


@st.composite
def simplex_points(draw, max_den=200, interior=False):
    q = draw(st.integers(min_value=3 if interior else 1, max_value=max_den))
    lo = 1 if interior else 0
    a = draw(st.integers(min_value=lo, max_value=q - 2 * lo))
    b = draw(st.integers(min_value=lo, max_value=q - a - lo))
    return SimplexPoint(Fraction(a, q), Fraction(b, q), Fraction(q - a - b, q))


@st.composite
def circle_points(draw, max_den=500):
    q = draw(st.integers(min_value=1, max_value=max_den))
    return Fraction(draw(st.integers(min_value=0, max_value=q - 1)), q)


letters = st.integers(min_value=1, max_value=3)
words = st.lists(letters, min_size=0, max_size=12)
