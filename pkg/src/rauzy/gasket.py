"""The Rauzy gasket: projective maps f_i, their inverses, membership and directing words."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    BARYCENTER,
    InputError,
    RauzyError,
    SimplexPoint,
    adjugate3,
    check_letter,
    int_det,
    int_matrix,
    lift_fhat,
    mat_prod,
    normalize_projective,
    quadratic_q,
)

HALF = Fraction(1, 2)
DEFAULT_MAX_DEPTH = 64


class NotInImage(RauzyError, ValueError):
    pass


class NotOrthogonal(InputError):
    pass


def matrix_M(i: int):
    """M_i: identity with row i replaced by (1,1,1)."""
    check_letter(i)
    rows = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
    rows[i - 1] = [1, 1, 1]
    return int_matrix(rows)


def apply_f(i: int, lam: SimplexPoint) -> SimplexPoint:
    """f_i(λ) = M_i λ / |M_i λ|; coordinate i becomes 1/(1+λ_j+λ_k)."""
    check_letter(i)
    v = list(lam)
    v[i - 1] = Fraction(1)  # λ1+λ2+λ3 = 1
    return normalize_projective(v)


def apply_f_inv(i: int, lam: SimplexPoint) -> SimplexPoint:
    """Inverse of f_i on f_i(Δ) = {λ_i ≥ 1/2}. At the vertex e_i returns e_i."""
    check_letter(i)
    li = lam.coord(i)
    if li < HALF:
        raise NotInImage(f"λ_{i} = {li} < 1/2, so {lam} is not in f_{i}(Δ)")
    v = [c / li for c in lam]
    v[i - 1] = (2 * li - 1) / li
    return SimplexPoint(*v)


def dominant_letters(lam: SimplexPoint) -> list[int]:
    return [i for i in (1, 2, 3) if lam.coord(i) >= HALF]


def first_letter(lam: SimplexPoint) -> tuple[Optional[int], bool]:
    """Smallest letter i with λ_i ≥ 1/2 and a flag set when the choice was not unique."""
    d = dominant_letters(lam)
    if not d:
        return None, False
    return d[0], len(d) > 1


# -- membership -------------------------------------------------------------

@dataclass(frozen=True)
class NotInGasket:
    escape_depth: int
    kind: str = "NotInGasket"


@dataclass(frozen=True)
class InGasketRationalClass:
    witness_word: tuple[int, ...]
    boundary_point: SimplexPoint
    kind: str = "InGasketRationalClass"


@dataclass(frozen=True)
class Undetermined:
    depth: int
    kind: str = "Undetermined"


@dataclass(frozen=True)
class DirectingWord:
    letters: tuple[int, ...]
    status: str  # "terminated:<reason>" or "truncated:<depth>"
    ambiguous_at: tuple[int, ...] = ()

    def __str__(self) -> str:
        return "".join(map(str, self.letters))


def membership(lam: SimplexPoint, max_depth: int = DEFAULT_MAX_DEPTH):
    """Run the subtractive algorithm on λ.

    Returns (verdict, DirectingWord).  The walk stops when an iterate reaches
    the boundary of Δ (rational class of R), lands in the open triangle Δ₀
    (not in R), or after max_depth inverse steps.
    """
    if max_depth < 0:
        raise InputError("max_depth must be >= 0")
    word: list[int] = []
    amb: list[int] = []
    cur = lam
    for depth in range(max_depth + 1):
        if cur.is_boundary():
            w = tuple(word)
            return InGasketRationalClass(w, cur), DirectingWord(w, "terminated:boundary", tuple(amb))
        i, tie = first_letter(cur)
        if i is None:
            w = tuple(word)
            return NotInGasket(depth), DirectingWord(w, "terminated:delta0", tuple(amb))
        if depth == max_depth:
            break
        if tie:
            amb.append(depth)
        word.append(i)
        cur = apply_f_inv(i, cur)
    w = tuple(word)
    return Undetermined(max_depth), DirectingWord(w, f"truncated:{max_depth}", tuple(amb))


def directing_word(lam: SimplexPoint, length: int) -> tuple[DirectingWord, SimplexPoint]:
    """Directing word of λ up to the given length, continued through the boundary.

    On ∂Δ the walk is Euclid's algorithm on the two nonzero coordinates; at a
    vertex e_i the letter i repeats.  Stops early only inside Δ₀.
    """
    word: list[int] = []
    amb: list[int] = []
    cur = lam
    for depth in range(length):
        i, tie = first_letter(cur)
        if i is None:
            return DirectingWord(tuple(word), "terminated:delta0", tuple(amb)), cur
        if tie:
            amb.append(depth)
        word.append(i)
        cur = apply_f_inv(i, cur)
    return DirectingWord(tuple(word), f"truncated:{length}", tuple(amb)), cur


def point_from_word(word: Sequence[int], seed: SimplexPoint = BARYCENTER) -> SimplexPoint:
    """f_w(seed) = f_{w1}(f_{w2}(... f_{wn}(seed)))."""
    p = seed
    for i in reversed(tuple(word)):
        p = apply_f(i, p)
    return p


# -- renormalization ----------------------------------------------------------

@dataclass(frozen=True)
class RenormStep:
    letter: int
    image: SimplexPoint
    ambiguous: bool


def renorm_F(lam: SimplexPoint) -> RenormStep:
    """One step of the renormalization map F(λ) = f_i⁻¹(λ), i the dominant letter."""
    i, tie = first_letter(lam)
    if i is None:
        raise NotInImage(f"{lam} lies in Δ₀; F is undefined there")
    return RenormStep(i, apply_f_inv(i, lam), tie)


def roof_r(lam: SimplexPoint) -> Fraction:
    """max_i λ_i; the roof function is minus its logarithm."""
    return max(lam)


# -- integer relations ---------------------------------------------------------

@dataclass
class RelationReport:
    word: tuple[int, ...]
    vectors: list[tuple[int, int, int]]
    q_values: list[int]
    stable_index: Optional[int]
    stable_vector: tuple[int, int, int]
    forbidden_letters: tuple[int, ...]
    q_monotone: bool
    q_nonnegative: bool
    tail_respects: bool
    notes: list[str] = field(default_factory=list)


def rational_relation_witness(lam: SimplexPoint, n: Sequence[int], max_depth: int = DEFAULT_MAX_DEPTH) -> RelationReport:
    """Push an integer relation ⟨n,λ⟩ = 0 along the directing word of λ.

    n^k = f̂_{i_k}(n^{k-1}) stays orthogonal to the k-th iterate of λ, q(n^k)
    drops by 4(n_{i_k})² each step, so the sequence stabilizes; afterwards no
    letter j with n^k_j ≠ 0 may occur.
    """
    n = tuple(int(c) for c in n)
    if n == (0, 0, 0):
        raise InputError("n must be nonzero")
    if sum(Fraction(a) * b for a, b in zip(n, lam)) != 0:
        raise NotOrthogonal(f"<{n}, {lam}> != 0")
    dw, _ = directing_word(lam, max_depth)
    word = dw.letters
    vecs = [n]
    for i in word:
        vecs.append(lift_fhat(i, vecs[-1]))
    qs = [quadratic_q(v) for v in vecs]
    stable = None
    for k in range(len(vecs)):
        if all(v == vecs[k] for v in vecs[k:]):
            stable = k
            break
    sv = vecs[stable if stable is not None else -1]
    forbidden = tuple(j for j in (1, 2, 3) if sv[j - 1] != 0)
    tail = word[stable:] if stable is not None else ()
    notes = []
    if dw.status.startswith("terminated"):
        notes.append(f"directing word ends after {len(word)} letters ({dw.status})")
    return RelationReport(
        word=word,
        vectors=vecs,
        q_values=qs,
        stable_index=stable,
        stable_vector=sv,
        forbidden_letters=forbidden,
        q_monotone=all(b <= a for a, b in zip(qs, qs[1:])),
        q_nonnegative=all(q >= 0 for q in qs),
        tail_respects=not any(j in tail for j in forbidden),
        notes=notes,
    )


# -- contraction certificate ------------------------------------------------------

A_MATRIX = int_matrix([[3, 1, 1], [1, 3, 1], [1, 1, 3]])


def contraction_certificate(kmax: int = 10) -> dict:
    """Check M_{j1} M_{j2}^k M_{j3} A⁻¹ ≥ 0 entrywise over {j1,j2,j3} = {1,2,3}, k ≤ kmax.

    Uses det(A)·A⁻¹ = adj(A) so everything stays integral.
    """
    adj = adjugate3(A_MATRIX)
    det = int_det(A_MATRIX)
    failures = []
    checked = 0
    for j1, j2, j3 in itertools.permutations((1, 2, 3)):
        for k in range(1, kmax + 1):
            prod = mat_prod([matrix_M(j1)] + [matrix_M(j2)] * k + [matrix_M(j3), adj], 3)
            checked += 1
            if min(int(x) for x in prod.flat) < 0:
                failures.append((j1, j2, k, j3))
    return {"det_A": det, "checked": checked, "failures": failures, "ok": not failures}
