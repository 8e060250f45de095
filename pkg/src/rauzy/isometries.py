"""Systems of isometries, orbit graphs and the Rips step on S_λ."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import InputError, RauzyError, SimplexPoint, fmt_rational, normalize_projective, parse_rational
from .gasket import (
    DEFAULT_MAX_DEPTH,
    InGasketRationalClass,
    NotInGasket,
    apply_f_inv,
    first_letter,
    membership,
    point_from_word,
)

Interval = tuple[Fraction, Fraction]


class NoFreeArc(RauzyError, ValueError):
    pass


def _iv(a, b) -> Interval:
    return (Fraction(a), Fraction(b))


@dataclass(frozen=True)
class IsometrySystem:
    """Support D (disjoint closed intervals) and unordered pairs {A, B} with |A| = |B|.

    Each pair carries the translation t_{A,B}(x) = x − a + c and its inverse.
    """

    support: tuple[Interval, ...]
    pairs: tuple[tuple[Interval, Interval], ...]

    def __post_init__(self):
        for A, B in self.pairs:
            if A[1] - A[0] != B[1] - B[0]:
                raise InputError(f"pair {A}, {B} has unequal lengths")
            for I in (A, B):
                if I[0] > I[1] or not any(a <= I[0] and I[1] <= b for a, b in self.support):
                    raise InputError(f"interval {I} is not inside the support")

    def scaled(self, s) -> "IsometrySystem":
        s = Fraction(s)
        f = lambda I: (I[0] * s, I[1] * s)
        return IsometrySystem(tuple(map(f, self.support)), tuple((f(A), f(B)) for A, B in self.pairs))

    def neighbors(self, x: Fraction) -> list[Fraction]:
        out = []
        for A, B in self.pairs:
            if A[0] <= x <= A[1]:
                out.append(x - A[0] + B[0])
            if B[0] <= x <= B[1]:
                out.append(x - B[0] + A[0])
        return out

    def contains(self, x) -> bool:
        return any(a <= x <= b for a, b in self.support)

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.support), Fraction(0))

    def to_json(self) -> str:
        s = lambda I: [fmt_rational(I[0]), fmt_rational(I[1])]
        return json.dumps({"support": [s(I) for I in self.support],
                           "pairs": [[s(A), s(B)] for A, B in self.pairs]})

    @classmethod
    def from_json(cls, text: str) -> "IsometrySystem":
        d = json.loads(text)
        p = lambda I: (parse_rational(I[0]), parse_rational(I[1]))
        return cls(tuple(p(I) for I in d["support"]), tuple((p(A), p(B)) for A, B in d["pairs"]))


def make_S_lambda(lam: SimplexPoint) -> IsometrySystem:
    """([0,1], {[0,λ_i],[1−λ_i,1]} for i = 1,2,3); zero-length pairs are kept."""
    return IsometrySystem(((Fraction(0), Fraction(1)),),
                          tuple((_iv(0, li), _iv(1 - li, 1)) for li in lam))


def lambda_of(S: IsometrySystem) -> SimplexPoint:
    """Recover λ from a (scaled) S_λ normal form."""
    if len(S.support) != 1 or len(S.pairs) != 3 or S.support[0][0] != 0:
        raise InputError("system is not in S_λ normal form")
    L = S.support[0][1]
    lam = normalize_projective([A[1] - A[0] for A, _ in S.pairs])
    if S != make_S_lambda(lam).scaled(L):
        raise InputError("system is not in S_λ normal form")
    return lam


# -- orbit graphs ---------------------------------------------------------------------

@dataclass
class OrbitBall:
    center: Fraction
    radius: int
    distance: dict  # vertex -> graph distance from center
    edges: set  # frozensets {x, y}; a singleton frozenset is a loop
    boundary_sizes: list[int]  # number of vertices at each distance 0..radius
    complete: bool  # the whole orbit was exhausted within the radius

    @property
    def vertices(self) -> set:
        return set(self.distance)


def orbit_ball(S: IsometrySystem, x, R: int) -> OrbitBall:
    """Breadth-first ball of radius R around x in the orbit structure graph.

    Works on Fractions or, for speed, on an integer-rescaled system with int x.
    """
    x = x if isinstance(x, int) else Fraction(x)
    if not S.contains(x):
        raise InputError(f"{x} is not in the support")
    dist = {x: 0}
    edges = set()
    q = deque([x])
    frontier_open = False
    while q:
        y = q.popleft()
        d = dist[y]
        for z in S.neighbors(y):
            edges.add(frozenset((y, z)))
            if z not in dist:
                if d == R:
                    frontier_open = True
                    continue
                dist[z] = d + 1
                q.append(z)
    sizes = [0] * (R + 1)
    for d in dist.values():
        sizes[d] += 1
    return OrbitBall(x, R, dist, edges, sizes, not frontier_open)


# -- the Rips step ----------------------------------------------------------------------

@dataclass(frozen=True)
class RipsStep:
    letter: int
    collapsed: IsometrySystem
    system: IsometrySystem
    scale: Fraction
    free_arc: Interval
    ambiguous: bool = False


def rips_step(S: IsometrySystem) -> RipsStep:
    """Collapse from the free arc (λ_i, 1−λ_j), then simplify along {[1−λ_j,1],[λ_i−λ_j,λ_i]}.

    The result is S_{f_i⁻¹(λ)} scaled by λ_i (times the current scale of S).
    """
    L = S.support[0][1]
    lam = lambda_of(S)
    i, tie = first_letter(lam)
    if i is None:
        raise NoFreeArc(f"{lam} has no coordinate >= 1/2")
    others = [k for k in (1, 2, 3) if k != i]
    j, k = sorted(others, key=lambda t: (-lam.coord(t), t))
    li, lj, lk = (lam.coord(t) * L for t in (i, j, k))
    free = _iv(li, L - lj)
    pairs = {}
    pairs[i] = (_iv(0, li - lj - lk), _iv(L - li, li))
    pairs[j] = (_iv(0, lj), _iv(L - lj, L))
    pairs[k] = (_iv(0, lk), _iv(L - lk, L))
    extra = (_iv(li - lj, li), _iv(L - lj, L))
    collapsed = IsometrySystem((_iv(0, li), _iv(L - lj, L)),
                               tuple(pairs[t] for t in (1, 2, 3)) + (extra,))
    # simplification: I = [L−λ_j, L] is carried onto J = [λ_i−λ_j, λ_i]; the right members of
    # the j and k pairs are exactly the intervals inside I (chosen by identity, not position,
    # so that a zero-length [L−λ_i, λ_i] sitting at L−λ_j when λ_i = λ_j stays put)
    shift = L - li
    psi = lambda I: (I[0] - shift, I[1] - shift)
    moved = {t: (pairs[t][0], psi(pairs[t][1])) for t in (j, k)}
    moved[i] = pairs[i]
    simple = IsometrySystem((_iv(0, li),), tuple(moved[t] for t in (1, 2, 3)))
    return RipsStep(i, collapsed, simple, lam.coord(i), free, tie)


def rips_run(lam: SimplexPoint, steps: int) -> list[RipsStep]:
    S = make_S_lambda(lam)
    out = []
    for _ in range(steps):
        try:
            st = rips_step(S)
        except NoFreeArc:
            break
        out.append(st)
        S = st.system
    return out


# -- trichotomy -------------------------------------------------------------------------

@dataclass
class Trichotomy:
    verdict: str
    witness: Optional[Fraction] = None
    steps: list = field(default_factory=list)
    gasket_class: str = ""
    notes: list = field(default_factory=list)


def classify_trichotomy(arg: Union[SimplexPoint, Sequence[int], str], max_depth: int = DEFAULT_MAX_DEPTH,
                        ball_radius: int = 64) -> Trichotomy:
    """Finite orbit / thin / surface decision for S_λ.

    Exact rational λ always has finite orbits; the witness is the point whose
    image under the accumulated rescaling is 1/2 at the terminal level (in Δ₀)
    or, on the boundary class, a grid midpoint.  A directing-word prefix is
    judged by the letters recurring in its second half: three letters give
    thin-type evidence, two give surface-type evidence.
    """
    if not isinstance(arg, SimplexPoint):
        word = tuple(int(c) for c in arg)
        lam = point_from_word(word)
        steps = rips_run(lam, len(word))
        tail = set(word[len(word) // 2:])
        logged = [s.letter for s in steps]
        if len(tail) == 3:
            return Trichotomy("ThinTypeEvidence", steps=logged, gasket_class="word",
                              notes=["every letter recurs; the Rips machine keeps running with free-arc collapses"])
        if len(tail) == 2:
            return Trichotomy("SurfaceTypeEvidence", steps=logged, gasket_class="word",
                              notes=["tail uses two letters: boundary class, equivalent to a rotation"])
        return Trichotomy("Undetermined", steps=logged, gasket_class="word")
    lam = arg
    verdict, dw = membership(lam, max_depth)
    word = dw.letters
    steps = rips_run(lam, len(word))
    scale = Fraction(1)
    for s in steps:
        scale *= s.scale
    if isinstance(verdict, NotInGasket):
        x = scale / 2
        cls = "complement"
        notes = ["terminal S_λ' has the singleton orbit {1/2}"]
    elif isinstance(verdict, InGasketRationalClass):
        bp = verdict.boundary_point
        den = max(v.denominator for v in bp)
        x = scale * Fraction(1, 2 * den)
        cls = "rational-boundary"
        notes = ["λ is in the rational class of the gasket and λ ∈ Q³: all orbits are finite"]
    else:
        return Trichotomy("Undetermined", steps=[s.letter for s in steps], gasket_class="undetermined")
    ball = orbit_ball(make_S_lambda(lam), x, ball_radius)
    if not ball.complete:
        notes.append(f"witness orbit not exhausted within radius {ball_radius}")
    return Trichotomy("FiniteOrbitNotMinimal", x, [s.letter for s in steps], cls, notes)
