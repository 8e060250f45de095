"""Exact arithmetic shared by every module.

Rationals are :class:`fractions.Fraction` (always reduced, arbitrary precision).
Integer matrices are numpy arrays of ``dtype=object`` holding Python ints, so
products never overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

LETTERS = (1, 2, 3)


class RauzyError(Exception):
    """Base class for all errors raised by the package."""


class InputError(RauzyError, ValueError):
    """Malformed user input (bad rational, bad letter, wrong normalization)."""


class ZeroVector(RauzyError, ValueError):
    pass


class MalformedRational(InputError):
    def __init__(self, text: str, offset: int = 0):
        super().__init__(f"malformed rational {text!r} at byte offset {offset}")
        self.text = text
        self.offset = offset


class NotNormalized(InputError):
    pass


class BadLetter(InputError):
    pass


_RAT_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def parse_rational(text: str, offset: int = 0) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; raises :class:`MalformedRational`."""
    s = text.strip()
    if not _RAT_RE.match(s):
        raise MalformedRational(text, offset)
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise MalformedRational(text, offset) from None


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the standard 2-simplex with exact rational coordinates."""

    l1: Fraction
    l2: Fraction
    l3: Fraction

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))
        if min(self.l1, self.l2, self.l3) < 0:
            raise InputError(f"negative coordinate in {self}")
        if self.l1 + self.l2 + self.l3 != 1:
            raise NotNormalized(f"coordinates of {self} do not sum to 1")

    def __iter__(self):
        return iter((self.l1, self.l2, self.l3))

    def __getitem__(self, i: int) -> Fraction:
        return (self.l1, self.l2, self.l3)[i]

    def coord(self, letter: int) -> Fraction:
        """1-based access, ``coord(i) = λ_i``."""
        return self[letter - 1]

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.l1, self.l2, self.l3)

    def is_boundary(self) -> bool:
        return min(self.as_tuple()) == 0

    def is_vertex(self) -> bool:
        return max(self.as_tuple()) == 1

    def __str__(self) -> str:
        return " ".join(fmt_rational(v) for v in self)

    def __repr__(self) -> str:
        return f"SimplexPoint({self})"

    @classmethod
    def parse(cls, text: str, normalize: bool = False) -> "SimplexPoint":
        parts = []
        pos = 0
        for tok in text.split():
            off = text.index(tok, pos)
            parts.append(parse_rational(tok, off))
            pos = off + len(tok)
        if len(parts) != 3:
            raise InputError(f"expected three rationals, got {len(parts)} in {text!r}")
        if normalize:
            return normalize_projective(parts)
        return cls(*parts)


BARYCENTER = SimplexPoint(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def normalize_projective(v: Sequence) -> SimplexPoint:
    """Return ``v / (v1 + v2 + v3)`` for a nonnegative nonzero 3-vector."""
    w = [Fraction(x) for x in v]
    if len(w) != 3:
        raise InputError("need a 3-vector")
    if min(w) < 0:
        raise InputError(f"negative component in {w}")
    s = sum(w)
    if s == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return SimplexPoint(w[0] / s, w[1] / s, w[2] / s)


def quadratic_q(m: Sequence[int]) -> int:
    """q(m) = m1²+m2²+m3² − 2m1m2 − 2m1m3 − 2m2m3."""
    a, b, c = m
    return a * a + b * b + c * c - 2 * a * b - 2 * a * c - 2 * b * c


def lift_fhat(i: int, m: Sequence[int]) -> tuple[int, int, int]:
    """Integer lift of f_i acting on relation vectors: adds m_i to the other two slots."""
    check_letter(i)
    v = list(m)
    mi = v[i - 1]
    return tuple(v[j] + mi if j != i - 1 else v[j] for j in range(3))


def check_letter(i) -> int:
    if i not in LETTERS:
        raise BadLetter(f"letter must be 1, 2 or 3, got {i!r}")
    return i


def parse_word(text: str) -> tuple[int, ...]:
    out = []
    for k, ch in enumerate(text.strip()):
        if ch not in "123":
            raise BadLetter(f"bad letter {ch!r} at byte offset {k}")
        out.append(int(ch))
    return tuple(out)


def word_str(w: Iterable[int]) -> str:
    return "".join(str(i) for i in w)


# -- integer matrices ------------------------------------------------------

def int_matrix(rows) -> np.ndarray:
    return np.array([[int(x) for x in r] for r in rows], dtype=object)


def int_identity(n: int) -> np.ndarray:
    return int_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mat_prod(mats: Iterable[np.ndarray], n: int) -> np.ndarray:
    out = int_identity(n)
    for m in mats:
        out = out.dot(m)
    return out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def int_det(m: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate3(m: np.ndarray) -> np.ndarray:
    """Adjugate of a 3x3 integer matrix, so that ``m @ adj = det(m) I``."""
    a = [[int(x) for x in row] for row in m]
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    return int_matrix([[cof[j][i] for j in range(3)] for i in range(3)])
