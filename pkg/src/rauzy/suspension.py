"""Double suspension of an enhanced system of isometries, leaf tracing and end counting.

The surface is kept combinatorial.  Interval I_k sits at height θ_k (k in
θ order); "slot k" is the part of D×S¹ just below the removed rectangle
R_k.  A leaf moving upward through slot k meets R_k: if x ∈ I_k it enters
the bottom of R_k, reappears on top of R_{p(k)} at t(x) (p = partner) and
continues in slot p(k)+1; otherwise it passes to slot k+1.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import InputError, RauzyError, SimplexPoint
from .isometries import IsometrySystem, make_S_lambda, orbit_ball
from .iet import IetMap


class EpsilonTooLarge(RauzyError, ValueError):
    pass


class DegenerateSystem(RauzyError, ValueError):
    pass


class NotTransversal(RauzyError, ValueError):
    pass


class HitSingularity(RauzyError):
    pass


@dataclass(frozen=True)
class EnhancedSystem:
    """Intervals listed in θ order with the partner index of each."""

    intervals: tuple[tuple[Fraction, Fraction], ...]
    partner: tuple[int, ...]
    support: tuple[tuple[Fraction, Fraction], ...] = ((Fraction(0), Fraction(1)),)

    def __post_init__(self):
        n = len(self.intervals)
        if sorted(self.partner) != list(range(n)) or any(self.partner[self.partner[k]] != k or self.partner[k] == k
                                                          for k in range(n)):
            raise InputError("partner must be a fixed-point-free involution")
        for k in range(n):
            (a, b), (c, d) = self.intervals[k], self.intervals[self.partner[k]]
            if b - a != d - c:
                raise InputError("paired intervals must have equal length")

    @property
    def size(self) -> int:
        return len(self.intervals)

    def theta(self) -> list[Fraction]:
        return [Fraction(k, self.size) for k in range(self.size)]

    def t(self, k: int, x: Fraction) -> Fraction:
        a = self.intervals[k][0]
        return x - a + self.intervals[self.partner[k]][0]

    def labels_at(self, x: Fraction) -> list[int]:
        return [k for k, (a, b) in enumerate(self.intervals) if a <= x <= b]

    def next_label(self, x: Fraction, k: int) -> int:
        """Label following k in the cyclic order θ restricted to intervals containing x."""
        n = self.size
        for d in range(1, n + 1):
            m = (k + d) % n
            a, b = self.intervals[m]
            if a <= x <= b:
                return m
        raise AssertionError

    def base(self) -> IsometrySystem:
        pairs = []
        for k in range(self.size):
            if k < self.partner[k]:
                pairs.append((self.intervals[k], self.intervals[self.partner[k]]))
        return IsometrySystem(self.support, tuple(pairs))


def enhanced_S_lambda(lam: SimplexPoint) -> EnhancedSystem:
    """θ order [0,λ1], [0,λ2], [0,λ3], [1−λ1,1], [1−λ2,1], [1−λ3,1]."""
    one = Fraction(1)
    iv = tuple((Fraction(0), li) for li in lam) + tuple((one - li, one) for li in lam)
    return EnhancedSystem(iv, (3, 4, 5, 0, 1, 2))


# -- the surface ---------------------------------------------------------------

@dataclass
class StripComplex:
    system: EnhancedSystem
    eps: Fraction
    euler: int
    genus: int
    singularities: list[dict]  # one per collapsed component: prongs and whether it is a true singularity
    gluing_audit: bool
    strips: int

    @property
    def lam(self):
        return getattr(self, "_lam", None)


class _DSU:
    def __init__(self):
        self.p = {}

    def find(self, a):
        self.p.setdefault(a, a)
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def build_double_suspension(E: EnhancedSystem, eps: Optional[Fraction] = None) -> StripComplex:
    """Combinatorial data of the double suspension surface.

    χ(Σ₂) = χ(D×S¹) − #rectangles − #glued segment pairs; each component K of
    the collapsed set contributes 1 − χ(K).  Prongs at a collapsed point are
    the vertical directions leaving it from rectangle corners not on ∂D.
    """
    n = E.size
    gap = Fraction(1, n)
    eps = Fraction(eps) if eps is not None else gap / 4
    if not 0 < eps < gap / 2:
        raise EpsilonTooLarge(f"ε = {eps} must lie in (0, {gap / 2})")
    if len(E.support) != 1:
        raise InputError("only connected supports are handled")
    lo, hi = E.support[0]
    for a, b in E.intervals:
        if a >= b:
            raise DegenerateSystem("zero-length interval; the suspension degenerates")
    audit = all(E.intervals[k][1] - E.intervals[k][0] == E.intervals[E.partner[k]][1] - E.intervals[E.partner[k]][0]
                for k in range(n))
    chi_sigma2 = 0 - n - n  # D×S¹, n open rectangles removed, n segment identifications
    # points of the collapsed set: (k, x, 'b'|'t') for x an endpoint of I_k
    dsu = _DSU()
    pts = [(k, x, s) for k in range(n) for x in E.intervals[k] for s in "bt"]
    for k in range(n):
        p = E.partner[k]
        for x in E.intervals[k]:
            dsu.union((k, x, "b"), (p, E.t(k, x), "t"))
    vertex_class = {q: dsu.find(q) for q in pts}
    # graph K: vertices = classes, plus circle placeholders; edges = side arcs and circle pieces
    kd = _DSU()
    edges = []
    for k in range(n):
        for x in E.intervals[k]:
            if x not in (lo, hi):
                edges.append((vertex_class[(k, x, "b")], vertex_class[(k, x, "t")]))
    circle_vertices = {}
    for c in (lo, hi):
        on = sorted({(k, s) for k in range(n) for x in E.intervals[k] if x == c for s in "bt"},
                    key=lambda ks: (ks[0], ks[1] == "t"))
        if not on:
            circle_vertices[c] = [("circle", c)]
            edges.append((("circle", c), ("circle", c)))
            continue
        vs = [vertex_class[(k, c, s)] for k, s in on]
        circle_vertices[c] = vs
        for a, b in zip(vs, vs[1:] + vs[:1]):
            edges.append((a, b))
    V = set(vertex_class.values()) | {v for vs in circle_vertices.values() for v in vs}
    for v in V:
        kd.find(v)
    for a, b in edges:
        kd.union(a, b)
    comps = {}
    for v in V:
        comps.setdefault(kd.find(v), {"V": 0, "E": 0, "prongs": 0})["V"] += 1
    for a, b in edges:
        comps[kd.find(a)]["E"] += 1
    for k in range(n):
        for x in E.intervals[k]:
            if x in (lo, hi):
                continue
            for s in "bt":
                comps[kd.find(vertex_class[(k, x, s)])]["prongs"] += 1
    chi = chi_sigma2 + sum(1 - (c["V"] - c["E"]) for c in comps.values())
    sing = sorted(({"prongs": c["prongs"], "singular": c["prongs"] != 2} for c in comps.values()),
                  key=lambda d: -d["prongs"])
    return StripComplex(E, eps, chi, (2 - chi) // 2, sing, audit, n)


# -- leaves -------------------------------------------------------------------------

def _flow_up(E: EnhancedSystem, k: int, x: Fraction, strict: bool = True):
    """From slot k at x: returns (new slot, new x, half-edge pair or None)."""
    a, b = E.intervals[k]
    if strict and x in (a, b):
        raise HitSingularity(f"leaf meets a corner of rectangle {k} at x = {x}")
    if a <= x < b:
        p = E.partner[k]
        return (p + 1) % E.size, E.t(k, x), ((x, k), (E.t(k, x), p))
    return (k + 1) % E.size, x, None


@dataclass
class HalfEdgeSeq:
    pairs: list[tuple[tuple[Fraction, int], tuple[Fraction, int]]]
    periodic: bool
    period: Optional[int]
    audit_ok: bool


def check_half_edge_rule(E: EnhancedSystem, pairs) -> bool:
    """Consecutive pairs form edges of Γ and the next label follows θ|_x."""
    for (x, l), (y, m) in pairs:
        if not (E.partner[l] == m and E.t(l, x) == y):
            return False
    for (_, (y, m)), ((x2, l2), _) in zip(pairs, pairs[1:]):
        if x2 != y or E.next_label(y, m) != l2:
            return False
    return True


def trace_leaf(E: EnhancedSystem, start: tuple[int, Fraction], max_crossings: int = 1000) -> HalfEdgeSeq:
    """Follow the leaf upward from (slot, x) through up to max_crossings rectangle jumps."""
    k, x = start[0] % E.size, Fraction(start[1])
    if not any(a <= x <= b for a, b in E.intervals):
        # x lies in no interval: the leaf is the vertical circle through x, crossing nothing
        return HalfEdgeSeq([], True, 0, True)
    seen = {(k, x): 0}
    pairs = []
    periodic, period = False, None
    while len(pairs) < max_crossings:
        k, x, hp = _flow_up(E, k, x, strict=True)
        if hp is not None:
            pairs.append(hp)
            if (k, x) in seen:
                periodic, period = True, len(pairs) - seen[(k, x)]
                break
            seen[(k, x)] = len(pairs)
    return HalfEdgeSeq(pairs, periodic, period, check_half_edge_rule(E, pairs))


def _flow_down_pairs(E: EnhancedSystem, k: int, x: Fraction, strict: bool = True):
    """Going down from slot k: meets the top of R_{k−1}."""
    n = E.size
    j = (k - 1) % n
    a, b = E.intervals[j]
    if strict and x in (a, b):
        raise HitSingularity(f"leaf meets a corner of rectangle {j} at x = {x}")
    if a <= x < b:
        p = E.partner[j]
        y = E.t(j, x)
        return p, y, ((y, p), (x, j))
    return j, x, None


# -- Poincaré map ---------------------------------------------------------------------

GammaPiece = tuple[int, Fraction, Fraction, Fraction]  # slot, x-start, length, s-start


def default_transversal(lam: SimplexPoint) -> list[GammaPiece]:
    """Closed transversal of length 2 on which the return map is 2·T^AR_λ(s/2).

    It runs once across the whole level of slot 1 (s = x + 1 + λ1 mod 2), then
    over [0, 1−λ2) in slot 5 and over [λ3, λ3+λ2) in slot 3.
    """
    l1, l2, l3 = lam
    pieces = [(1, Fraction(0), 1 - l1, 1 + l1), (1, 1 - l1, l1, Fraction(0)),
              (5, Fraction(0), 1 - l2, l1 + l2), (3, l3, l2, l1)]
    return [p for p in pieces if p[2] > 0]


def _gamma_hit(gamma, k, x):
    for (kk, u, L, s0) in gamma:
        if kk == k and u <= x < u + L:
            return s0 + x - u
    return None


def poincare_return(E: EnhancedSystem, gamma: Sequence[GammaPiece], s, limit: int = 10**5) -> Fraction:
    s = Fraction(s)
    total = sum(p[2] for p in gamma)
    s = s % total
    for (k, u, L, s0) in gamma:
        if s0 <= s < s0 + L:
            x = u + s - s0
            break
    else:
        raise NotTransversal(f"{s} is not on the transversal")
    for _ in range(limit):
        k, x, _ = _flow_up(E, k, x, strict=False)
        hit = _gamma_hit(gamma, k, x)
        if hit is not None:
            return hit % total
    raise NotTransversal("leaf did not return")


@dataclass
class InducedExchange:
    branches: list[tuple[Fraction, Fraction, Fraction]]  # (start, end, translation mod total)
    total: Fraction

    def __call__(self, s) -> Fraction:
        s = Fraction(s) % self.total
        for a, b, t in self.branches:
            if a <= s < b:
                return (s + t) % self.total
        raise ValueError(s)


def poincare_map(E: EnhancedSystem, gamma: Sequence[GammaPiece], limit: int = 10**4) -> InducedExchange:
    """Exact induced exchange on γ by pushing whole intervals along the flow."""
    total = sum(p[2] for p in gamma)
    out = []
    work = deque()
    for (k, u, L, s0) in gamma:
        work.append((k, u, u + L, s0 - u))  # s = x + shift
    steps = 0
    while work:
        steps += 1
        if steps > limit * len(gamma):
            raise NotTransversal("some strip never returns to γ")
        k, lo, hi, shift = work.popleft()
        a, b = E.intervals[k]
        parts = []
        ia, ib = max(lo, a), min(hi, b)
        if ia < ib:
            p = E.partner[k]
            d = E.intervals[p][0] - a
            parts.append(((p + 1) % E.size, ia + d, ib + d, shift - d))
        for (c, e) in ((lo, min(hi, a)), (max(lo, b), hi)):
            if c < e:
                parts.append(((k + 1) % E.size, c, e, shift))
        for (k2, c, e, sh) in parts:
            pending = [(c, e)]
            for (kk, u, L, s0) in gamma:
                if kk != k2:
                    continue
                nxt = []
                for (c1, e1) in pending:
                    ha, hb = max(c1, u), min(e1, u + L)
                    if ha < hb:
                        out.append((ha + sh, hb + sh, (s0 - u) - sh))
                        if c1 < ha:
                            nxt.append((c1, ha))
                        if hb < e1:
                            nxt.append((hb, e1))
                    else:
                        nxt.append((c1, e1))
                pending = nxt
            for (c1, e1) in pending:
                work.append((k2, c1, e1, sh))
    out = sorted(((a % total, (a % total) + (b - a), t % total) for a, b, t in out))
    merged = []
    for a, b, t in out:
        if merged and merged[-1][1] == a and merged[-1][2] == t:
            merged[-1] = (merged[-1][0], b, t)
        else:
            merged.append((a, b, t))
    return InducedExchange(merged, total)


def doubled_T(lam: SimplexPoint, s) -> Fraction:
    return 2 * IetMap(lam)(Fraction(s) / 2)


# -- ribbon graph and ends -------------------------------------------------------------------

@dataclass
class EndReport:
    ends: object  # 1, 2, "Undetermined" or "NotApplicable"
    boundary_cycles: int
    leaf_count: int
    counts_by_radius: dict
    closed_cycles: int
    flagged: bool
    notes: list = field(default_factory=list)


def ribbon_walks(E: EnhancedSystem, ball_dist: dict, radius: int):
    """Boundary walks of the ribbon ball: φ = σ∘ι on half-edges at vertices within radius.

    Returns (walks, closed) where walks are lists of half-edges.
    """
    H = [(y, l) for y, d in ball_dist.items() if d <= radius for l in E.labels_at(y)]
    Hs = set(H)
    phi = {}
    for (y, l) in H:
        z, m = E.t(l, y), E.partner[l]
        if (z, m) in Hs:
            phi[(y, l)] = (z, E.next_label(z, m))
    has_pre = set(phi.values())
    walks, closed = [], 0
    done = set()
    for h in H:
        if h in has_pre or h in done:
            continue
        w = [h]
        done.add(h)
        while w[-1] in phi:
            w.append(phi[w[-1]])
            done.add(w[-1])
        walks.append(w)
    for h in H:
        if h in done:
            continue
        w = [h]
        done.add(h)
        cur = phi[h]
        while cur != h:
            w.append(cur)
            done.add(cur)
            cur = phi[cur]
        walks.append(w)
        closed += 1
    return walks, closed


def _core_count(walks, ball_dist, r0):
    return sum(1 for w in walks if any(ball_dist[y] <= r0 for y, _ in w))


def independent_leaf_count(E: EnhancedSystem, ball_dist: dict, radius: int, r0: int) -> int:
    """Leaves over the core half-edges, found by flowing on the strip complex both ways."""
    inside = {y for y, d in ball_dist.items() if d <= radius}
    core = [(y, l) for y, d in ball_dist.items() if d <= r0 for l in E.labels_at(y)]
    budget = 2 * E.size * (len(inside) + 1)
    dsu = _DSU()
    for h in core:
        dsu.find(h)
        y, l = h
        for step in (_flow_up, _flow_down_pairs):
            k, x = l, y
            seen = set()
            for _ in range(budget):
                k, x, hp = step(E, k, x, False)
                if hp is None:
                    continue
                if hp[0][0] not in inside or hp[1][0] not in inside or hp in seen:
                    break
                seen.add(hp)
                dsu.union(h, hp[0])  # the half-edge through which the leaf enters a rectangle
    return len({dsu.find(h) for h in core})


def integer_model(E: EnhancedSystem, *points) -> tuple:
    """Rescale by a common denominator so orbit points become plain ints (fast hashing)."""
    vals = [Fraction(v) for iv in E.intervals + E.support for v in iv] + [Fraction(p) for p in points]
    D = math.lcm(*(v.denominator for v in vals))
    sc = lambda iv: (int(iv[0] * D), int(iv[1] * D))
    Ei = EnhancedSystem(tuple(map(sc, E.intervals)), E.partner, tuple(map(sc, E.support)))
    return (Ei, *(int(Fraction(p) * D) for p in points))


def count_ends(E: EnhancedSystem, x, radius: int = 128, r0: Optional[int] = None) -> EndReport:
    """Number of ends of Γ_x seen from a ball, via boundary walks through the core.

    The core is the r0-ball (default radius/16).  Counts are taken at radii
    radius/2, 3radius/4 and radius; the answer is reported only if stable.
    """
    x = Fraction(x)
    r0 = max(1, radius // 16) if r0 is None else r0
    E, X = integer_model(E, x)
    ball = orbit_ball(E.base(), X, radius)
    if ball.complete:
        walks, closed = ribbon_walks(E, ball.distance, radius)
        lc = independent_leaf_count(E, ball.distance, radius, r0)
        return EndReport("NotApplicable", _core_count(walks, ball.distance, r0), lc, {}, closed, True,
                         ["finite orbit"])
    counts = {}
    for R in sorted({radius // 2, (3 * radius) // 4, radius}):
        walks, closed = ribbon_walks(E, ball.distance, R)
        counts[R] = _core_count(walks, ball.distance, r0)
    walks, closed = ribbon_walks(E, ball.distance, radius)
    bc = counts[radius]
    lc = independent_leaf_count(E, ball.distance, radius, r0)
    stable = len(set(counts.values())) == 1
    if stable and bc in (1, 2):
        ends = bc
    else:
        ends = "Undetermined"
    return EndReport(ends, bc, lc, counts, closed, not stable)


def suspension_for(lam: SimplexPoint) -> EnhancedSystem:
    return enhanced_S_lambda(lam)


@dataclass
class EndCensus:
    samples: int
    one_ended: int  # samples in D₁
    two_ended: int  # samples in D₂
    flagged: int
    d2_fraction: Optional[float]  # among non-flagged samples; an empirical mass, not a theorem


def end_census(E: EnhancedSystem, xs: Sequence, radius: int = 128) -> EndCensus:
    """Empirical split of sample points into one-ended (D₁) and two-ended (D₂) orbit trees."""
    reps = [count_ends(E, x, radius) for x in xs]
    one = sum(1 for r in reps if not r.flagged and r.ends == 1)
    two = sum(1 for r in reps if not r.flagged and r.ends == 2)
    flagged = sum(1 for r in reps if r.flagged)
    return EndCensus(len(reps), one, two, flagged, two / (one + two) if one + two else None)
