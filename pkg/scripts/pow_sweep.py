"""Positive and negative checks of the power polynomial on a grid; prints a summary."""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from diophantine.matiyasevich import POW_MAX_BITS, pow_polynomial, verify_pow


@dataclass(frozen=True)
class PowSweepConfig:
    x_max: int = 5
    y_max: int = 4
    w_max: int = 100
    bound: int = 40
    max_bits: int = POW_MAX_BITS
    node_limit: int = 200_000


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=PowSweepConfig.bound)
    ap.add_argument("--w-max", type=int, default=PowSweepConfig.w_max)
    args = ap.parse_args()
    cfg = PowSweepConfig(bound=args.bound, w_max=args.w_max)
    cd = pow_polynomial()
    print(f"power polynomial: params={cd.params} dummies={cd.dummies} degree={cd.poly.degree()} monomials={len(cd.poly)}")
    t0 = time.perf_counter()
    checks = verify_pow(cfg.x_max, cfg.y_max, cfg.bound, cfg.w_max, cfg.max_bits, cfg.node_limit)
    dt = time.perf_counter() - t0
    for label, want in (("positive", True), ("negative", False)):
        counts = Counter(c.status for c in checks if c.expected == want)
        print(f"{label}: {dict(sorted(counts.items()))}")
    for c in checks:
        if c.status != "pass":
            print(f"  ({c.x}, {c.y}, {c.w}) {c.status}: {c.detail}")
    print(f"{dt:.1f}s")


if __name__ == "__main__":
    main()
