"""Birkhoff check of the two nonUE columns against orbit branch frequencies.

Orbits of a rational approximation f_w(barycenter), w = 1^{k1} 2^{k2} 3^{k3} ...,
are split by which column they follow; every start should sit clearly closer
to one of the two columns, and both columns should be claimed by some start.
"""

import argparse

from rauzy.measures import birkhoff_invariance_test, lebesgue_vector, nonUE_measures, pattern_word
from rauzy.gasket import point_from_word


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--blocks", type=int, default=10)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--starts", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    letters = [(1, 2, 3)[j % 3] for j in range(21)]
    exps = [2 ** j for j in range(1, 22)]
    r = nonUE_measures(letters, exps, 20, 256)
    cols = [[float(v) for v in c] for c in r.columns]
    w = pattern_word(letters[: a.blocks], exps[: a.blocks])
    leb = [float(v) for v in lebesgue_vector(point_from_word(w))]
    rep = birkhoff_invariance_test(w, cols + [leb], a.n, seed=a.seed, n_starts=a.starts)
    print("start\tres_col0\tres_col1\tres_lebesgue\twinner")
    for x, res in zip(rep.starts, rep.residuals):
        print(f"{x}\t{res[0]:.5f}\t{res[1]:.5f}\t{res[2]:.5f}\t{min((0, 1), key=lambda c: res[c])}")


if __name__ == "__main__":
    main()
