"""Run the codimension-4 construction for a range of k and print every certified identity.

    python scripts/certify_m01.py --k-max 7 --magnitudes 3,5,7,11,13,17
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from filiform_tgs.m01construct import construct_m01


@dataclass
class CertifyConfig:
    k_min: int = 3
    k_max: int = 6
    magnitudes: tuple | None = None
    verbose: bool = False


def run(cfg: CertifyConfig) -> bool:
    all_ok = True
    for k in range(cfg.k_min, cfg.k_max + 1):
        mags = None if cfg.magnitudes is None else list(cfg.magnitudes[: k - 1])
        t0 = time.perf_counter()
        c = construct_m01(k, mags, strict=False)
        dt = time.perf_counter() - t0
        failed = [n for n, ok in c.report.items() if not ok]
        all_ok &= not failed
        radicands = sorted({s for x in c.u for s in x.terms})
        print(f"k={k} dim={c.dim} dim(h)={c.h.dim} radicands={radicands} {dt:.2f}s "
              f"{'all ' + str(len(c.report)) + ' checks pass' if not failed else 'FAILED: ' + ', '.join(failed)}")
        if cfg.verbose:
            for name, ok in c.report.items():
                print(f"    {'ok ' if ok else 'BAD'} {name}")
    return all_ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-min", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--magnitudes", help="comma separated distinct positive rationals")
    ap.add_argument("--verbose", action="store_true")
    a = ap.parse_args()
    mags = None if a.magnitudes is None else tuple(Fraction(x) for x in a.magnitudes.split(","))
    ok = run(CertifyConfig(a.k_min, a.k_max, mags, a.verbose))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
