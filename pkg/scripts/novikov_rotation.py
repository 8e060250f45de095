"""Which conjugacy identifies the Novikov first-return map with T^AR?

For seeded random λ, records every rotation/reflection witness found by the
exhaustive search and checks the observed rotation r = 1 + 3λ1 + 2λ2 mod 4.
"""

import argparse
import random
from collections import Counter

from rauzy.cli import sample_lambdas
from rauzy.novikov import first_return_iet


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--max-den", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    stats = Counter()
    for lam in sample_lambdas(random.Random(a.seed), a.n, a.max_den, interior=False):
        if lam.is_vertex():
            continue
        r = first_return_iet(lam)
        stats["match"] += r.match
        stats["rotation as predicted"] += bool(r.rotation_as_predicted)
        stats["reflected witness exists"] += any(refl for _, refl in r.witnesses)
        stats[f"witnesses={len(r.witnesses)}"] += 1
        stats[f"max return crossings<={(r.extracted.max_return // 10 + 1) * 10}"] += 1
        stats["total"] += 1
    for k, v in sorted(stats.items()):
        print(f"{k}\t{v}")


if __name__ == "__main__":
    main()
