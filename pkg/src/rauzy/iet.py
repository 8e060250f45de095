"""The Arnoux-Rauzy circle exchange T^AR_λ, Rauzy induction and orbit classification."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import RauzyError, SimplexPoint, check_letter
from .gasket import (
    DEFAULT_MAX_DEPTH,
    InGasketRationalClass,
    NotInGasket,
    apply_f_inv,
    first_letter,
    membership,
    point_from_word,
)

HALF = Fraction(1, 2)


class NoDominantLetter(RauzyError, ValueError):
    pass


@dataclass(frozen=True)
class IetMap:
    """T^AR_λ: x ↦ x + (1±λ_i)/2 on six consecutive branches of S¹ = [0,1).

    ``tilde=False`` is the right-continuous map (branches [a,b)); ``tilde=True``
    is the left-limit version T̃ (branches (a,b]).  Zero-length branches are
    simply never selected, which covers λ on the boundary of Δ.
    """

    lam: SimplexPoint
    tilde: bool = False

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        l1, l2, l3 = self.lam
        return (Fraction(0), l1 / 2, l1, l1 + l2 / 2, l1 + l2, l1 + l2 + l3 / 2, Fraction(1))

    @property
    def offsets(self) -> tuple[Fraction, ...]:
        out = []
        for li in self.lam:
            out += [(1 + li) / 2, (1 - li) / 2]
        return tuple(out)

    def branch(self, x: Fraction) -> int:
        bp = self.breakpoints
        if not self.tilde:
            for k in range(6):
                if bp[k] <= x < bp[k + 1]:
                    return k
        else:
            if x == 0:
                x = Fraction(1)
            for k in range(6):
                if bp[k] < x <= bp[k + 1]:
                    return k
        raise AssertionError(f"no branch for {x}")

    def __call__(self, x) -> Fraction:
        x = Fraction(x) % 1
        return (x + self.offsets[self.branch(x)]) % 1

    def inverse(self, y) -> Fraction:
        """Inverse of the right-continuous map."""
        y = Fraction(y) % 1
        bp, off = self.breakpoints, self.offsets
        for k in range(6):
            if bp[k] == bp[k + 1]:
                continue
            if (y - bp[k] - off[k]) % 1 < bp[k + 1] - bp[k]:
                return (y - off[k]) % 1
        raise AssertionError(f"no preimage for {y}")

    def involution_part(self, x) -> Fraction:
        """T′ = Φ⁻¹∘T with Φ the half-turn; swaps the two halves of each letter interval."""
        return (self(x) - HALF) % 1

    def singular_points(self) -> frozenset:
        return frozenset(self.breakpoints[:6])

    def letter_of(self, x: Fraction) -> int:
        """Which of [0,λ1), [λ1,λ1+λ2), [λ1+λ2,1) contains x (closed-left; closed-right for T̃)."""
        return self.branch(x) // 2 + 1


def eval_T(lam: SimplexPoint, x, tilde: bool = False) -> Fraction:
    return IetMap(lam, tilde)(x)


@dataclass
class Orbit:
    points: list
    is_singular_orbit: bool
    period: Optional[int]


def orbit(T: IetMap, x, n: int) -> Orbit:
    """x, T(x), ..., T^n(x), with a flag for hitting a discontinuity and the period if seen."""
    x = Fraction(x) % 1
    sing = T.singular_points()
    pts = [x]
    singular = x in sing
    period = None
    cur = x
    for k in range(1, n + 1):
        cur = T(cur)
        pts.append(cur)
        singular = singular or cur in sing
        if period is None and cur == x:
            period = k
    return Orbit(pts, singular, period)


def return_time(T: IetMap, x, limit: int = 10**6) -> Optional[int]:
    x = Fraction(x) % 1
    cur = x
    for k in range(1, limit + 1):
        cur = T(cur)
        if cur == x:
            return k
    return None


# -- Rauzy induction ---------------------------------------------------------

def induction_window(lam: SimplexPoint, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """(left end a, length λ_i, origin shift r) for inducing on the letter-i interval.

    The first-return map to [a, a+λ_i), read as a circle in the coordinate
    u = ((y−a)/λ_i − r) mod 1, is exactly T^AR over f_i⁻¹(λ).
    """
    check_letter(i)
    li = lam.coord(i)
    a = sum(lam.as_tuple()[: i - 1], Fraction(0))
    lp = apply_f_inv(i, lam)
    if i == 1:
        r = (1 - lp.l1) / 2
    elif i == 2:
        r = (lp.l3 - lp.l1) / 2 % 1
    else:
        r = -(lp.l1 + lp.l2) / 2 % 1
    return a, li, r


def window_to_circle(lam: SimplexPoint, i: int, u) -> Fraction:
    a, li, r = induction_window(lam, i)
    return (a + li * ((Fraction(u) + r) % 1)) % 1


def circle_to_window(lam: SimplexPoint, i: int, y) -> Fraction:
    a, li, r = induction_window(lam, i)
    return (((Fraction(y) - a) % 1) / li - r) % 1


def induced_map(T: IetMap, i: int, u, limit: int = 10**6) -> Fraction:
    """First return of T to the letter-i window, evaluated in window coordinates."""
    a, li, _ = induction_window(T.lam, i)
    y = window_to_circle(T.lam, i, u)
    for _ in range(limit):
        y = T(y)
        if (y - a) % 1 < li:
            return circle_to_window(T.lam, i, y)
    raise RauzyError("no return within limit")


@dataclass(frozen=True)
class InductionStep:
    letter: int
    T: IetMap
    scale: Fraction
    ambiguous: bool = False


def rauzy_induction_step(T: IetMap) -> InductionStep:
    i, tie = first_letter(T.lam)
    if i is None:
        raise NoDominantLetter(f"{T.lam} has no coordinate >= 1/2")
    return InductionStep(i, IetMap(apply_f_inv(i, T.lam), T.tilde), T.lam.coord(i), tie)


def induction_run(T: IetMap, steps: int) -> list[InductionStep]:
    out = []
    cur = T
    for _ in range(steps):
        try:
            st = rauzy_induction_step(cur)
        except NoDominantLetter:
            break
        out.append(st)
        cur = st.T
    return out


# -- period-3 window ------------------------------------------------------------

def period3_window(lam: SimplexPoint) -> tuple[Fraction, Fraction]:
    """Open interval of points of period 3 for λ in Δ₀.

    With λ_{σ1} ≥ λ_{σ2} ≥ λ_{σ3} the window is c + ((λ_{σ1}−λ_{σ3})/2, λ_{σ2}/2),
    where the shift c depends only on which coordinate is smallest:
    0 if it is λ3, −λ3/2 if λ2, λ1 if λ1.
    """
    if max(lam) >= HALF:
        raise RauzyError(f"{lam} is not in the open triangle Δ₀")
    sig = sorted(range(3), key=lambda k: -lam[k])
    lo = (lam[sig[0]] - lam[sig[2]]) / 2
    hi = lam[sig[1]] / 2
    c = (lam.l1, -lam.l3 / 2, Fraction(0))[sig[2]]
    return c + lo, c + hi


# -- classification -------------------------------------------------------------

@dataclass
class Classification:
    verdict: str
    witness: Optional[Fraction] = None
    period: Optional[int] = None
    word: tuple = ()
    boundary_point: Optional[SimplexPoint] = None
    notes: list = field(default_factory=list)


def _regular_witness(T: IetMap, candidates, limit: int):
    for x in candidates:
        o_period = return_time(T, x, limit)
        if o_period is None:
            return x, None
        if not orbit(T, x, o_period).is_singular_orbit:
            return x, o_period
    return None, None


def _terminal_candidates(lam: SimplexPoint, count: int = 8):
    """Regular-orbit candidates for the terminal parameter of a run."""
    if max(lam) < HALF:
        lo, hi = period3_window(lam)
        fr = [Fraction(1, 2)] + [Fraction(k, count + 1) for k in range(1, count + 1)]
        return [(lo + (hi - lo) * t) % 1 for t in fr]
    # rational boundary or vertex: grid midpoints of the common breakpoint denominator
    den = math.lcm(*(Fraction(v / 2).denominator for v in lam), 2)
    return [Fraction(2 * k + 1, 2 * den) for k in range(min(den, count))]


def classify(lam: SimplexPoint, max_depth: int = DEFAULT_MAX_DEPTH, orbit_limit: int = 10**6) -> Classification:
    """Decide the orbit type of T^AR_λ for exact rational λ.

    Every rational λ has a regular finite orbit; the witness is produced on
    the terminal parameter of the subtractive run (a period-3 point in Δ₀, or
    a grid midpoint on ∂Δ) and pulled back through the induction windows.
    """
    verdict, dw = membership(lam, max_depth)
    word = dw.letters
    if isinstance(verdict, NotInGasket):
        terminal = lam
        for i in word:
            terminal = apply_f_inv(i, terminal)
        notes = ["terminal parameter in Δ₀; period-3 window pulled back"]
        bpt = None
    elif isinstance(verdict, InGasketRationalClass):
        terminal = verdict.boundary_point
        notes = ["λ lies in the rational class of the gasket; rational, so all orbits finite"]
        bpt = terminal
    else:
        return Classification("Undetermined", word=word, notes=[f"no decision within depth {max_depth}"])
    T = IetMap(lam)
    cands = _terminal_candidates(terminal)
    # pull back through the induction windows, innermost first
    lams = [lam]
    for i in word:
        lams.append(apply_f_inv(i, lams[-1]))
    pulled = []
    for u in cands:
        for depth in range(len(word) - 1, -1, -1):
            u = window_to_circle(lams[depth], word[depth], u)
        pulled.append(u)
    x, period = _regular_witness(T, pulled, orbit_limit)
    if x is None:
        x = pulled[0]
        notes.append("no regular candidate verified")
    if period is None:
        notes.append(f"return time exceeds {orbit_limit}")
    return Classification("FiniteRegularOrbit", x, period, word, bpt, notes)


def classify_word(prefix: Sequence[int], period: Sequence[int]) -> Classification:
    """Symbolic verdict for the eventually periodic directing word prefix·period^∞.

    All three letters recurring makes the point irrational and in R_irr, so
    the map is minimal.  Two recurring letters give an irrational boundary
    class (restriction conjugate to an irrational rotation, no finite orbit).
    One recurring letter is a rational vertex class.
    """
    prefix, period = tuple(prefix), tuple(period)
    if not period:
        raise RauzyError("period must be nonempty")
    for c in prefix + period:
        check_letter(c)
    used = set(period)
    if len(used) == 3:
        return Classification("MinimalCertified", word=prefix + period)
    if len(used) == 2:
        return Classification(
            "NonMinimalNoFiniteOrbit",
            word=prefix + period,
            notes=["tail runs Euclid on two coordinates: boundary point with irrational ratio"],
        )
    i = period[0]
    e = [Fraction(0)] * 3
    e[i - 1] = Fraction(1)
    lam = point_from_word(prefix, SimplexPoint(*e))
    return Classification("FiniteRegularOrbit", word=prefix + period, boundary_point=lam,
                          notes=["tail fixes a vertex; λ is rational"])


class ScaledIet:
    """T^AR_λ on the grid (1/D)ℤ/ℤ with D a common denominator; pure-int orbits."""

    def __init__(self, T: IetMap, *points):
        bp, off = T.breakpoints, T.offsets
        self.D = math.lcm(*(Fraction(v).denominator for v in bp + off + points))
        self.bp = [int(v * self.D) for v in bp]
        self.off = [int(v * self.D) for v in off]
        self.tilde = T.tilde

    def to_int(self, x: Fraction) -> int:
        x = Fraction(x) % 1
        if (x * self.D).denominator != 1:
            raise ValueError("point not on the grid; use IetMap")
        return int(x * self.D)

    def step(self, X: int) -> int:
        bp = self.bp
        if not self.tilde:
            k = bisect.bisect_right(bp, X) - 1
            while bp[k] == bp[k + 1]:
                k += 1
        else:
            Y = X if X != 0 else self.D
            k = bisect.bisect_left(bp, Y) - 1
        return (X + self.off[k]) % self.D

    def letters(self, X: int, n: int) -> bytes:
        """Letter codes 1, 2, 3 of X, T X, ..., T^{n-1} X."""
        bp, off, D = self.bp, self.off, self.D
        cuts = [bp[2], bp[4]]
        out = bytearray(n)
        tilde = self.tilde
        for k in range(n):
            if not tilde:
                out[k] = 1 if X < cuts[0] else (2 if X < cuts[1] else 3)
            else:
                Y = X if X != 0 else D
                out[k] = 1 if Y <= cuts[0] else (2 if Y <= cuts[1] else 3)
            X = self.step(X)
        return bytes(out)
