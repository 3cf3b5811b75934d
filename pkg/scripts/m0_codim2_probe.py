"""Probe m0(n) for graded totally geodesic subalgebras of codimension 2.

Searches adapted-basis spans for random inner products and reports the
largest dimension seen.  The known codimension-2 examples come from an inner
product that is not reproduced here; this is an experiment, not a claim.

    python scripts/m0_codim2_probe.py --n 6 --trials 200
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as F

from filiform_tgs.catalog import FamilySpec, build
from filiform_tgs.exactlinalg import InnerProduct
from filiform_tgs.tgsverify import adapted_basis, graded_tgs_search


@dataclass
class ProbeConfig:
    n: int = 6
    trials: int = 100
    seed: int = 1
    entry_bound: int = 4


def run(cfg: ProbeConfig) -> Counter:
    rng = random.Random(cfg.seed)
    g = build(FamilySpec("m0", cfg.n))
    n = cfg.n
    seen: Counter = Counter()
    for _ in range(cfg.trials):
        b = cfg.entry_bound
        a = [[F(rng.randint(-b, b), rng.randint(1, b)) for _ in range(n)] for _ in range(n)]
        gram = [[sum((a[k][i] * a[k][j] for k in range(n)), F(0)) + (i == j) for j in range(n)] for i in range(n)]
        ip = InnerProduct(tuple(tuple(r) for r in gram))
        res = graded_tgs_search(g, ip, adapted_basis(g, ip))
        seen[res.max_dim] += 1
        if res.max_dim >= n - 2:
            print("codimension 2 reached:", res.max_subsets, ip.gram)
    return seen


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    seen = run(ProbeConfig(a.n, a.trials, a.seed))
    for d in sorted(seen):
        print(f"max dim {d}: {seen[d]} inner products")


if __name__ == "__main__":
    main()
