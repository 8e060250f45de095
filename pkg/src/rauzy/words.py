"""Codings of T^AR orbits and their finite-depth combinatorics."""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import SimplexPoint, check_letter
from .iet import IetMap, ScaledIet


class InsufficientLength(UserWarning):
    pass


@dataclass(frozen=True)
class Coding:
    letters: bytes
    lam: SimplexPoint | None = None
    x: Fraction | None = None
    tilde: bool = False

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.letters)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.letters)


def code(lam: SimplexPoint, x, N: int, tilde: bool = False) -> Coding:
    """u_k = letter of the interval [0,λ1), [λ1,λ1+λ2), [λ1+λ2,1) holding T^k(x)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    x = Fraction(x) % 1
    T = IetMap(lam, tilde)
    S = ScaledIet(T, x)
    return Coding(S.letters(S.to_int(x), N), lam, x, tilde)


def word_from_string(s: str) -> Coding:
    return Coding(bytes(check_letter(int(c)) for c in s.strip()))


def _factors(w: bytes, n: int) -> set:
    return {w[i:i + n] for i in range(len(w) - n + 1)}


@dataclass
class ComplexityProfile:
    p: list[int]
    right_special: list[int]
    left_special: list[int]
    right_special_factors: list[list[str]] = field(default_factory=list)
    left_special_factors: list[list[str]] = field(default_factory=list)

    def rows(self):
        for n in range(1, len(self.p) + 1):
            yield n, self.p[n - 1], self.right_special[n - 1], self.left_special[n - 1]


def complexity_profile(c: Coding | bytes | str, n_max: int, keep_factors: bool = False) -> ComplexityProfile:
    """p(n) for n = 1..n_max and the numbers of right- and left-special factors."""
    w = c.letters if isinstance(c, Coding) else (word_from_string(c).letters if isinstance(c, str) else bytes(c))
    if len(w) < 50 * n_max:
        warnings.warn(f"coding length {len(w)} < 50*n_max = {50 * n_max}", InsufficientLength, stacklevel=2)
    prof = ComplexityProfile([], [], [])
    nxt = _factors(w, 1)
    for n in range(1, n_max + 1):
        cur, nxt = nxt, _factors(w, n + 1)
        right = defaultdict(set)
        left = defaultdict(set)
        for f in nxt:
            right[f[:-1]].add(f[-1])
            left[f[1:]].add(f[0])
        rs = sorted(k for k, v in right.items() if len(v) > 1)
        ls = sorted(k for k, v in left.items() if len(v) > 1)
        prof.p.append(len(cur))
        prof.right_special.append(len(rs))
        prof.left_special.append(len(ls))
        if keep_factors:
            prof.right_special_factors.append(["".join(map(str, f)) for f in rs])
            prof.left_special_factors.append(["".join(map(str, f)) for f in ls])
    return prof


def letter_frequencies(c: Coding | bytes) -> tuple[Fraction, Fraction, Fraction]:
    w = c.letters if isinstance(c, Coding) else bytes(c)
    n = len(w)
    return tuple(Fraction(w.count(k), n) for k in (1, 2, 3))


@dataclass
class RecurrenceReport:
    max_gap: dict[int, int]
    seen_once: dict[int, int]
    worst_factor: dict[int, str]


def recurrence_check(w: Sequence[int] | bytes | str, n_max: int) -> RecurrenceReport:
    """Largest gap between consecutive occurrences of each factor, per length 0..n_max.

    Factors that occur only once are counted separately (non-recurrence evidence).
    """
    if isinstance(w, str):
        w = word_from_string(w).letters
    w = bytes(w)
    rep = RecurrenceReport({}, {}, {})
    rep.max_gap[0] = 1 if len(w) > 1 else 0
    rep.seen_once[0] = 0
    rep.worst_factor[0] = ""
    for n in range(1, n_max + 1):
        last: dict[bytes, int] = {}
        gap: dict[bytes, int] = {}
        for i in range(len(w) - n + 1):
            f = w[i:i + n]
            if f in last:
                g = i - last[f]
                if g > gap.get(f, 0):
                    gap[f] = g
            last[f] = i
        once = [f for f in last if f not in gap]
        rep.seen_once[n] = len(once)
        if gap:
            worst = max(gap, key=lambda f: (gap[f], f))
            rep.max_gap[n] = gap[worst]
            rep.worst_factor[n] = "".join(map(str, worst))
        else:
            rep.max_gap[n] = 0
            rep.worst_factor[n] = ""
    return rep
