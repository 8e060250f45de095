"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Seeds are fixed so every run samples the same λ and points.
"""

import io
import math
import random
import time
from fractions import Fraction as F

import mpmath
import pytest

from rauzy.cli import main as cli_main, sample_lambdas, sample_rationals
from rauzy.core import SimplexPoint, int_identity
from rauzy.fractal import SIERPINSKI_DIMENSION, box_dimension_estimate, removed_areas, sierpinski_self_test
from rauzy.gasket import apply_f, apply_f_inv, directing_word, first_letter, point_from_word
from rauzy.iet import IetMap, induced_map, period3_window, rauzy_induction_step
from rauzy.isometries import make_S_lambda, orbit_ball, rips_step
from rauzy.measures import (birkhoff_invariance_test, matrix_N, nonUE_measures, orthant_singular_values,
                            pattern_word, positivity_certificate, word_product)
from rauzy.novikov import first_return_iet
from rauzy.suspension import count_ends, default_transversal, doubled_T, enhanced_S_lambda, poincare_map
from rauzy.words import code, complexity_profile, letter_frequencies


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def _lambda_in_image(rng, i, den=1000):
    """Random rational λ with λ_i ≥ 1/2."""
    t = F(rng.randint(0, den), den)
    li = (1 + t) / 2
    s = F(rng.randint(0, den), den)
    rest = [(1 - li) * s, (1 - li) * (1 - s)]
    v = rest[: i - 1] + [li] + rest[i - 1:]
    return SimplexPoint(*v)


def _dominant(rng, n, den=1000):
    out = []
    while len(out) < n:
        lam = sample_lambdas(rng, 1, den, interior=False)[0]
        if first_letter(lam)[0] is not None and not lam.is_vertex():
            out.append(lam)
    return out


def _delta0(rng, n, den=1000):
    out = []
    while len(out) < n:
        lam = sample_lambdas(rng, 1, den)[0]
        if max(lam) < F(1, 2):
            out.append(lam)
    return out


NONUE_M = 20
NONUE_PREC = 256
NONUE_LETTERS = [(1, 2, 3)[j % 3] for j in range(NONUE_M + 1)]
NONUE_EXPS = [2 ** j for j in range(1, NONUE_M + 2)]


def test_c01_gasket_round_trip(report):
    rng = random.Random(1)
    t = time.perf_counter()
    bad = 0
    for i in (1, 2, 3):
        for lam in sample_lambdas(rng, 10_000, interior=False):
            bad += apply_f_inv(i, apply_f(i, lam)) != lam
        for _ in range(10_000):
            lam = _lambda_in_image(rng, i)
            bad += apply_f(i, apply_f_inv(i, lam)) != lam
    dt = time.perf_counter() - t
    report(1, "gasket round trip", bad == 0 and dt < 10, f"failures={bad} time={dt:.2f}s")


def test_c02_membership_induction_rips(report):
    rng = random.Random(2)
    t = time.perf_counter()
    bad = []
    for lam in _dominant(rng, 1000):
        i = directing_word(lam, 1)[0].letters[0]
        ind = rauzy_induction_step(IetMap(lam))
        rp = rips_step(make_S_lambda(lam))
        lp = apply_f_inv(i, lam)
        ok = i == ind.letter == rp.letter
        ok = ok and ind.T.lam == lp and ind.scale == rp.scale == lam.coord(i)
        ok = ok and rp.system.scaled(1 / lam.coord(i)) == make_S_lambda(lp)
        # the rescaled exchange really is the first return of T to the letter-i window
        for u in sample_rationals(rng, 2, 97):
            ok = ok and induced_map(IetMap(lam), i, u) == ind.T(u)
        if not ok:
            bad.append(lam)
    dt = time.perf_counter() - t
    report(2, "membership / induction / Rips commute", not bad and dt < 60, f"failures={len(bad)} time={dt:.2f}s")


def test_c03_period_three(report):
    rng = random.Random(3)
    t = time.perf_counter()
    bad = 0
    for lam in _delta0(rng, 1000):
        lo, hi = period3_window(lam)
        x = (lo + (hi - lo) * F(rng.randint(1, 999), 1000)) % 1
        T = IetMap(lam)
        bad += T(T(T(x))) != x
    dt = time.perf_counter() - t
    report(3, "period-3 window", bad == 0 and dt < 10, f"failures={bad} time={dt:.2f}s")


def test_c04_positivity_and_power_identity(report):
    prod = word_product([1, 2, 3, 1, 2])
    positive = int(prod.min()) > 0 and prod.size == 36 and positivity_certificate([1, 2, 3, 1, 2]) == "StrictlyPositive"
    power_ok = True
    for i in (1, 2, 3):
        one = int_identity(6)
        acc = one
        for k in range(1, 21):
            acc = acc.dot(matrix_N(i))
            power_ok = power_ok and bool((acc == k * (matrix_N(i) - one) + one).all())
    report(4, "positivity certificate and N_i^k identity", positive and power_ok,
           f"min entry={int(prod.min())} identity k<=20: {power_ok}")


def test_c05_double_suspension(report):
    rng = random.Random(5)
    t = time.perf_counter()
    bad = 0
    for lam in sample_lambdas(rng, 100, 200):
        pm = poincare_map(enhanced_S_lambda(lam), default_transversal(lam))
        for s in sample_rationals(rng, 50, 1000, F(0), F(2)):
            bad += pm(s) != doubled_T(lam, s)
    dt = time.perf_counter() - t
    report(5, "Poincaré map = T scaled twice", bad == 0 and dt < 120, f"failures={bad} time={dt:.2f}s")


def test_c06_novikov(report):
    rng = random.Random(6)
    t = time.perf_counter()
    bad = []
    lams = [lam for lam in sample_lambdas(rng, 120, 1000, interior=False) if not lam.is_vertex()][:100]
    for lam in lams:
        r = first_return_iet(lam)
        want = tuple(x / 2 for x in lam for _ in range(2) if x > 0)
        if not (r.match and r.length_vector == want):
            bad.append(lam)
    dt = time.perf_counter() - t
    report(6, "Novikov first return = T", not bad and len(lams) == 100 and dt < 120,
           f"failures={len(bad)} time={dt:.2f}s")


def _c7_setup():
    rng = random.Random(7)
    while True:
        w = [rng.randint(1, 3) for _ in range(12)]
        if len(set(w)) == 3:
            break
    lam = point_from_word(w)
    x = F(rng.randrange(1, 10**6), 10**6)
    return w, lam, code(lam, x, 10**5)


def test_c07_complexity(report):
    t = time.perf_counter()
    w, lam, c = _c7_setup()
    prof = complexity_profile(c, 15)
    ok = prof.p == [2 * n + 1 for n in range(1, 16)]
    ok = ok and prof.right_special == [1] * 15 and prof.left_special == [1] * 15
    dt = time.perf_counter() - t
    report(7, "factor complexity 2n+1", ok and dt < 60, f"word={''.join(map(str, w))} p={prof.p} time={dt:.2f}s")


def test_c08_frequencies(report):
    w, lam, c = _c7_setup()
    N = len(c.letters)
    dev = max(abs(float(a - b)) for a, b in zip(letter_frequencies(c), lam))
    report(8, "letter frequencies", dev <= 2 / math.sqrt(N), f"max deviation={dev:.2e} bound={2 / math.sqrt(N):.2e}")


def test_c09_non_unique_ergodicity(report):
    t = time.perf_counter()
    r = nonUE_measures(NONUE_LETTERS, NONUE_EXPS, NONUE_M, NONUE_PREC)
    last = r.successive[-1]
    converged = last < mpmath.mpf(2) ** -64
    separated = r.separation > 0.01
    bw = pattern_word(NONUE_LETTERS[:10], NONUE_EXPS[:10])
    cols = [[float(v) for v in c] for c in r.columns]
    rep = birkhoff_invariance_test(bw, cols, N=100_000, seed=9, n_starts=12)
    wins = [min(range(2), key=lambda c: res[c]) for res in rep.residuals]
    birkhoff = set(wins) == {0, 1} and all(min(res) < 0.5 * max(res) for res in rep.residuals)
    dt = time.perf_counter() - t
    ok = converged and separated and r.x7_exact_zero and birkhoff and dt < 60
    report(9, "non-uniquely ergodic construction", ok,
           f"successive(m=20)={mpmath.nstr(last, 4)} (target 2^-64={2.0 ** -64:.2e}) "
           f"separation={mpmath.nstr(r.separation, 4)} x7=0:{r.x7_exact_zero} "
           f"birkhoff winners={wins} time={dt:.2f}s")


def test_c10_two_measure_cap(report):
    s = orthant_singular_values(NONUE_LETTERS, NONUE_EXPS, NONUE_M, NONUE_PREC)
    rank = sum(1 for v in s if v > mpmath.mpf(2) ** -32)
    r = nonUE_measures(NONUE_LETTERS, NONUE_EXPS, NONUE_M, NONUE_PREC)
    report(10, "limiting column space has rank <= 2", rank <= 2 and r.rank(2.0 ** -32) <= 2,
           f"orthant rank={rank} relative singular values={[mpmath.nstr(v, 3) for v in s]}")


def test_c11_end_counting(report):
    rng = random.Random(11)
    t = time.perf_counter()
    bad, flagged, total = [], 0, 0
    for _ in range(3):
        while True:
            w = [rng.randint(1, 3) for _ in range(20)]
            if len(set(w[10:])) == 3:
                break
        E = enhanced_S_lambda(point_from_word(w))
        for x in sample_rationals(rng, 50, 10**6):
            r = count_ends(E, x, 128)
            total += 1
            flagged += r.flagged
            if (not r.flagged and r.ends not in (1, 2)) or r.boundary_cycles != r.leaf_count:
                bad.append((w, x))
    dt = time.perf_counter() - t
    report(11, "orbit trees have 1 or 2 ends", not bad, f"samples={total} flagged={flagged} "
           f"failures={len(bad)} time={dt:.2f}s")


def test_c12_singleton_orbit(report):
    rng = random.Random(12)
    bad = sum(orbit_ball(make_S_lambda(lam), F(1, 2), 10).vertices != {F(1, 2)} for lam in _delta0(rng, 100))
    report(12, "singleton orbit of 1/2 in Δ₀", bad == 0, f"failures={bad}")


def test_c13_fractal(report):
    a = removed_areas(10)
    inc = a[0] == F(1, 4) and all(x < y for x, y in zip(a, a[1:]))
    dim = box_dimension_estimate(grid=1 << 10)
    sp = sierpinski_self_test(1 << 10)
    ok = inc and 1.19 < dim.estimate < 2 and abs(sp.estimate - SIERPINSKI_DIMENSION) <= 0.02
    report(13, "removed area, dimension and self-test", ok,
           f"area(10)={float(a[-1]):.4f} dimension={dim.estimate:.4f} sierpinski={sp.estimate:.4f}")


DETERMINISM_RUNS = [
    ["dictionary", "--lambda", "2/5 7/20 1/4", "--seed", "14"],
    ["susp", "poincare", "--lambda", "1/2 1/4 1/4", "--samples", "50", "--seed", "14"],
    ["novikov", "match", "--lambda", "3/7 2/7 2/7"],
    ["words", "complexity", "--lambda", "9/17 5/17 3/17", "--x", "1/10", "--n", "20000", "--nmax", "10"],
    ["measures", "nonue", "--m", "20", "--prec", "256", "--birkhoff-n", "20000", "--birkhoff-starts", "4",
     "--seed", "14"],
    ["susp", "ends", "--lambda-word", "12312312312312312312", "--x", "1/7", "--radius", "64"],
    ["isom", "ball", "--lambda", "1/3 1/3 1/3", "--x", "1/7", "--radius", "12"],
    ["fractal", "area", "--depth", "6"],
    ["fractal", "dim", "--grid", "64"],
]


def test_c14_determinism(report):
    diffs = []
    for argv in DETERMINISM_RUNS:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            code = cli_main(argv, buf)
            outs.append((code, buf.getvalue().encode()))
        if outs[0] != outs[1] or outs[0][0] != 0:
            diffs.append(" ".join(argv[:2]))
    report(14, "byte-identical reruns", not diffs, f"commands={len(DETERMINISM_RUNS)} differing={diffs}")
