"""Invariant-measure cocycle of T^AR: matrices Ñ_i, N_i, positivity and the two-measure construction.

Measure vectors are x = (x1..x6) = masses of the six branches
[0,λ1/2], [λ1/2,λ1], ..., [λ1+λ2+λ3/2, 1], plus the auxiliary x7.
"""

from __future__ import annotations

import bisect
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np

from .core import RauzyError, check_letter, int_det, int_identity, int_matrix, kron, mat_prod
from .gasket import matrix_M, point_from_word
from .iet import IetMap, ScaledIet

B = int_matrix([[0, 1], [1, 0]])

_NT_ROWS = {
    1: {0: (1, 0, 0, 1, 0, 1, -1), 1: (0, 1, 1, 0, 1, 0, 1)},
    2: {2: (0, 1, 1, 0, 0, 1, -1), 3: (1, 0, 0, 1, 1, 0, 1)},
    3: {4: (0, 1, 0, 1, 1, 0, -1), 5: (1, 0, 1, 0, 0, 1, 1)},
}


class NotSummable(RauzyError, ValueError):
    pass


class RankCollapse(RauzyError):
    pass


def matrix_Ntilde(i: int) -> np.ndarray:
    check_letter(i)
    rows = [[1 if r == c else 0 for c in range(7)] for r in range(7)]
    for r, row in _NT_ROWS[i].items():
        rows[r] = list(row)
    return int_matrix(rows)


def matrix_N(i: int) -> np.ndarray:
    return matrix_Ntilde(i)[:6, :6]


def matrix_P(i: int) -> np.ndarray:
    return matrix_M(i) - int_identity(3)


def word_product(word: Sequence[int], tilde: bool = False) -> np.ndarray:
    n = 7 if tilde else 6
    f = matrix_Ntilde if tilde else matrix_N
    return mat_prod((f(i) for i in word), n)


def N_power(i: int, k: int) -> np.ndarray:
    """N_i^k = k P_i⊗B + 1, computed without repeated multiplication."""
    return k * kron(matrix_P(i), B) + int_identity(6)


def dets() -> dict[int, int]:
    return {i: int_det(matrix_N(i)) for i in (1, 2, 3)}


# -- positivity -----------------------------------------------------------------

def positivity_certificate(word: Sequence[int]) -> str:
    prod = word_product(word)
    return "StrictlyPositive" if min(int(v) for v in prod.flat) > 0 else "NotYet"


def contains_subsequence(word: Sequence[int], pattern: Sequence[int] = (1, 2, 3, 1, 2)) -> bool:
    it = iter(word)
    return all(any(c == p for c in it) for p in pattern)


def hilbert_distance(u: Sequence, v: Sequence) -> float:
    """Hilbert projective distance between two nonnegative vectors (inf if supports differ)."""
    ratios = []
    for a, b in zip(u, v):
        a, b = int(a) if isinstance(a, (int, np.integer)) else a, int(b) if isinstance(b, (int, np.integer)) else b
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return math.inf
        ratios.append(math.log(a) - math.log(b) if isinstance(a, int) else float(mpmath.log(a) - mpmath.log(b)))
    return max(ratios) - min(ratios) if ratios else 0.0


def cone_diameter(mat: np.ndarray) -> float:
    """Hilbert diameter of the image of the positive orthant (spanned by the columns)."""
    cols = [list(mat[:, j]) for j in range(mat.shape[1])]
    d = 0.0
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            d = max(d, hilbert_distance(cols[a], cols[b]))
    return d


@dataclass
class UEEvidence:
    certified_factors: list[tuple[int, int]]
    diameters: list[float]
    monotone: bool

    @property
    def count(self) -> int:
        return len(self.certified_factors)


def _latest_start(word: Sequence[int], end: int, pattern: Sequence[int]) -> Optional[int]:
    k = len(pattern) - 1
    for s in range(end, -1, -1):
        if word[s] == pattern[k]:
            k -= 1
            if k < 0:
                return s
    return None


def unique_ergodicity_evidence(word: Sequence[int], window: int = 64,
                               pattern: Sequence[int] = (1, 2, 3, 1, 2)) -> UEEvidence:
    """Disjoint factors of length ≤ window carrying the 12312 subsequence, and cone diameters.

    Factors are chosen greedily by earliest end, which maximizes their number.
    The diameter is recorded after each certified factor.
    """
    word = tuple(word)
    facs = []
    pos = 0
    for e in range(len(word)):
        s = _latest_start(word[pos:e + 1], e - pos, pattern)
        if s is not None and e - (s + pos) + 1 <= window:
            facs.append((s + pos, e + 1))
            pos = e + 1
    diams = []
    prod = int_identity(6)
    last = 0
    for _, e in facs:
        prod = prod.dot(word_product(word[last:e]))
        last = e
        diams.append(cone_diameter(prod))
    mono = all(b <= a for a, b in zip(diams, diams[1:]))
    return UEEvidence(facs, diams, mono)


# -- non-uniquely ergodic construction -------------------------------------------------

def default_precision() -> int:
    return int(os.environ.get("RAUZY_PRECISION", "256"))


def projective_distance(u: Sequence, v: Sequence):
    """max_k |u_k/Σu − v_k/Σv| (sup-norm on the sum-normalized slice)."""
    su, sv = sum(u), sum(v)
    return max(abs(a / su - b / sv) for a, b in zip(u, v))


@dataclass
class NonUEResult:
    letters: list[int]
    exponents: list[int]
    columns: list[list]  # two normalized columns (sum 1), mpmath floats
    raw: object  # final 6x2 mpmath matrix C(1, m_max)
    successive: list  # per m: max over columns of distance to the previous stage
    separation: object  # projective distance between the two final columns
    singular_values: list
    x7_exact_zero: bool
    exact_consistent: bool
    precision: int

    def rank(self, tol) -> int:
        s = self.singular_values
        return sum(1 for v in s if v > tol * s[0])


def _block_matrix(i: int, k, ctx) -> "mpmath.matrix":
    P = matrix_P(i)
    m = ctx.zeros(6, 6)
    for a in range(3):
        for b in range(3):
            for c in range(2):
                m[2 * a + c, 2 * b + c] += int(P[a, b])
        for c in range(2):
            m[2 * a + c, 2 * a + (1 - c)] += ctx.mpf(1) / k
    return m


def check_summable(exponents: Sequence[int], tail_bound: float = 0.25) -> None:
    """Heuristic: the sum of 1/k_j over the second half of the prefix must be small."""
    if any(k < 1 for k in exponents):
        raise NotSummable("exponents must be positive integers")
    tail = exponents[len(exponents) // 2:]
    s = sum(1.0 / k for k in tail)
    if s >= tail_bound:
        raise NotSummable(f"tail sum of 1/k_j is {s:.3f}; the series does not look convergent")


def nonUE_measures(letters: Sequence[int], exponents: Sequence[int], m_max: int = 20,
                   precision: Optional[int] = None) -> NonUEResult:
    """Columns of C(1,m) = Π_{j≤m+1} (P_{i_j}⊗1 + (1⊗B)/k_j) · ((e1+e2+e3)⊗1) for m ≤ m_max.

    Alongside the floating computation, the exact integer product of the
    7x7 Ñ_{i_j}^{k_j} is applied to the lifted stage vectors to confirm x7 = 0
    and to cross-check the floating columns.
    """
    precision = precision or default_precision()
    letters = [check_letter(i) for i in letters[: m_max + 1]]
    exponents = [int(k) for k in exponents[: m_max + 1]]
    if len(letters) < m_max + 1 or len(exponents) < m_max + 1:
        raise ValueError("need m_max+1 letters and exponents")
    if any(a == b for a, b in zip(letters, letters[1:])):
        raise ValueError("consecutive letters must differ")
    check_summable(exponents)
    ctx = mpmath.MPContext()
    ctx.prec = precision
    start = ctx.zeros(6, 2)
    for a in range(3):
        start[2 * a, 0] = 1
        start[2 * a + 1, 1] = 1
    successive = []
    prev = None
    x7_ok = True
    consistent = True
    for m in range(m_max + 1):
        v = start
        for j in range(m, -1, -1):
            v = _block_matrix(letters[j], exponents[j], ctx) * v
        cols = [[v[r, c] for r in range(6)] for c in range(2)]
        if prev is not None:
            successive.append(max(projective_distance(cols[c], prev[c]) for c in range(2)))
        prev = cols
        # exact lift: Π Ñ^{k_j} applied to ((e1+e2+e3)⊗B^{m+1}, 0)
        prod = mat_prod((_ntilde_power(letters[j], exponents[j]) for j in range(m + 1)), 7)
        Bm = B if (m + 1) % 2 else int_identity(2)
        lift = np.vstack([kron(int_matrix([[1], [1], [1]]), Bm), int_matrix([[0, 0]])])
        exact = prod.dot(lift)
        x7_ok = x7_ok and all(int(exact[6, c]) == 0 for c in range(2))
        scale = math.prod(exponents[: m + 1])
        for c in range(2):
            err = max(abs(ctx.mpf(int(exact[r, c])) / scale - cols[c][r]) for r in range(6))
            consistent = consistent and err < ctx.mpf(2) ** (-(precision // 2))
    sep = projective_distance(prev[0], prev[1])
    if sep < ctx.mpf(2) ** (-(precision // 4)):
        raise RankCollapse(f"columns proportional at precision {precision}")
    U, S, V = ctx.svd_r(v)
    sv = sorted((S[k] for k in range(len(S))), reverse=True)
    norm = [[x / sum(col) for x in col] for col in prev]
    return NonUEResult(letters, exponents, norm, v, successive, sep, sv, x7_ok, consistent, precision)


def orthant_singular_values(letters: Sequence[int], exponents: Sequence[int], m_max: int = 20,
                            precision: Optional[int] = None) -> list:
    """Relative singular values of Π_{j≤m+1} (P_{i_j}⊗1 + (1⊗B)/k_j) on the whole 6-dim orthant.

    The number above a tolerance bounds the dimension of the limiting cone,
    hence the number of ergodic invariant measures.
    """
    ctx = mpmath.MPContext()
    ctx.prec = precision or default_precision()
    v = ctx.eye(6)
    for j in range(m_max, -1, -1):
        v = _block_matrix(check_letter(letters[j]), int(exponents[j]), ctx) * v
    s = sorted(ctx.svd_r(v, compute_uv=False), reverse=True)
    return [x / s[0] for x in s]


def _ntilde_power(i: int, k: int) -> np.ndarray:
    out = int_identity(7)
    base = matrix_Ntilde(i)
    while k:
        if k & 1:
            out = out.dot(base)
        base = base.dot(base)
        k >>= 1
    return out


def pattern_word(letters: Sequence[int], exponents: Sequence[int]) -> list[int]:
    """The directing word i1^{k1} i2^{k2} ..."""
    w = []
    for i, k in zip(letters, exponents):
        w += [i] * k
    return w


# -- Birkhoff validation -----------------------------------------------------------

def branch_frequencies(lam, x: Fraction, N: int) -> list[float]:
    S = ScaledIet(IetMap(lam), x)
    X = S.to_int(x)
    bp, off, D = S.bp, S.off, S.D
    cnt = [0] * 6
    for _ in range(N):
        k = bisect.bisect_right(bp, X) - 1
        while bp[k] == bp[k + 1]:
            k += 1
        cnt[k] += 1
        X = (X + off[k]) % D
    return [c / N for c in cnt]


@dataclass
class BirkhoffReport:
    starts: list[Fraction]
    frequencies: list[list[float]]
    residuals: list[list[float]]  # residuals[s][c]: start s against candidate c


def birkhoff_invariance_test(word: Sequence[int], candidates: Sequence[Sequence], N: int = 100_000,
                             starts: Optional[Sequence[Fraction]] = None, seed: int = 0,
                             n_starts: int = 12) -> BirkhoffReport:
    """Max deviation between branch-visit frequencies of long orbits and candidate measures.

    λ = f_word(barycenter) is a rational approximation of the parameter with
    this directing word; orbits shorter than its periods behave like the limit.
    """
    lam = point_from_word(word)
    if starts is None:
        rng = random.Random(seed)
        starts = [Fraction(rng.randrange(1, 10**6), 10**6) for _ in range(n_starts)]
    cands = [[float(v) / float(sum(c)) for v in c] for c in candidates]
    freqs, res = [], []
    for x in starts:
        f = branch_frequencies(lam, x, N)
        freqs.append(f)
        res.append([max(abs(a - b) for a, b in zip(f, c)) for c in cands])
    return BirkhoffReport(list(starts), freqs, res)


def lebesgue_vector(lam) -> list[Fraction]:
    return [v / 2 for v in lam for _ in range(2)]
