"""How fast do the two columns of C(1, m) settle, and how far apart do they end up?

Prints, per m, the successive projective distance and the separation of the
two normalized columns for the pattern (123)^∞ with k_j = 2^j.  Also reports
the first m at which the successive distance drops below 2^-64.
"""

import argparse

import mpmath

from rauzy.measures import nonUE_measures, orthant_singular_values


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=70)
    ap.add_argument("--prec", type=int, default=256)
    ap.add_argument("--target", type=int, default=64, help="report the first m with distance < 2^-target")
    a = ap.parse_args()
    letters = [(1, 2, 3)[j % 3] for j in range(a.m + 1)]
    exps = [2 ** j for j in range(1, a.m + 2)]
    r = nonUE_measures(letters, exps, a.m, a.prec)
    print("m\tsuccessive\tsuccessive*k_{m+1}")
    for m, d in enumerate(r.successive, 1):
        print(f"{m}\t{mpmath.nstr(d, 6)}\t{mpmath.nstr(d * exps[m], 6)}")
    hit = next((m for m, d in enumerate(r.successive, 1) if d < mpmath.mpf(2) ** -a.target), None)
    print(f"# first m with successive distance < 2^-{a.target}: {hit}")
    print(f"# separation of the limit columns: {mpmath.nstr(r.separation, 8)}")
    print(f"# x7 = 0 at every stage: {r.x7_exact_zero}; float/exact agreement: {r.exact_consistent}")
    s = orthant_singular_values(letters, exps, min(a.m, 20), a.prec)
    print("# relative singular values on the orthant (m=20):", [mpmath.nstr(v, 3) for v in s])


if __name__ == "__main__":
    main()
