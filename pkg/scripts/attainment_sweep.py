"""Graded search over the catalog: largest totally geodesic coordinate span per algebra.

    python scripts/attainment_sweep.py --max-dim 12 --random-ips 3
"""

from __future__ import annotations

import argparse
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction as F

from filiform_tgs.catalog import DuplicateFamilyWarning, FamilySpec, all_specs, build
from filiform_tgs.exactlinalg import InnerProduct
from filiform_tgs.tgsverify import adapted_basis, graded_tgs_search


@dataclass
class SweepConfig:
    max_dim: int = 12
    alphas: list = field(default_factory=lambda: [F(-1), F(1, 2), F(1), F(3)])
    random_ips: int = 0
    seed: int = 0
    workers: int = 1


def bound(spec: FamilySpec) -> int:
    n = spec.dim
    if spec.family == "m0":
        return n - 2
    if spec.family == "m01":
        return n - 4
    return n // 2


def random_ip(rng: random.Random, n: int) -> InnerProduct:
    a = [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
    gram = [[sum((a[k][i] * a[k][j] for k in range(n)), F(0)) + (i == j) for j in range(n)] for i in range(n)]
    return InnerProduct(tuple(tuple(r) for r in gram))


def run(cfg: SweepConfig) -> list[dict]:
    warnings.simplefilter("ignore", DuplicateFamilyWarning)
    rng = random.Random(cfg.seed)
    specs = all_specs(cfg.max_dim, cfg.alphas)
    specs += [FamilySpec("V", n) for n in range(3, min(cfg.max_dim, 11) + 1)]
    rows = []
    for spec in specs:
        g = build(spec)
        t0 = time.perf_counter()
        ident = graded_tgs_search(g, InnerProduct.identity(g.dim), workers=cfg.workers)
        best_random = 0
        for _ in range(cfg.random_ips):
            ip = random_ip(rng, g.dim)
            res = graded_tgs_search(g, ip, adapted_basis(g, ip), workers=cfg.workers)
            best_random = max(best_random, res.max_dim)
        rows.append(
            {
                "algebra": spec.label(),
                "n": g.dim,
                "identity": ident.max_dim,
                "random": best_random,
                "bound": bound(spec),
                "seconds": time.perf_counter() - t0,
            }
        )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=12)
    ap.add_argument("--random-ips", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    cfg = SweepConfig(max_dim=a.max_dim, random_ips=a.random_ips, seed=a.seed, workers=a.workers)
    print(f"{'algebra':<14}{'n':>3}{'ident':>7}{'random':>8}{'bound':>7}{'sec':>7}")
    for r in run(cfg):
        flag = "" if max(r["identity"], r["random"]) <= r["bound"] else "  ABOVE BOUND"
        print(f"{r['algebra']:<14}{r['n']:>3}{r['identity']:>7}{r['random']:>8}{r['bound']:>7}{r['seconds']:>7.2f}{flag}")


if __name__ == "__main__":
    main()
