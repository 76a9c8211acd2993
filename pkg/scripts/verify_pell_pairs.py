"""Both directions of the Pell-pair formula for a few bases; refreshes the witness cache."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from diophantine.matiyasevich import WitnessCache, verify_pell_theorem3

ROOT = Path(__file__).resolve().parents[1]


@dataclass(frozen=True)
class PellPairConfig:
    bases: tuple[int, ...] = (2, 3)
    k_max: int = 4
    witness_bound: int = 10**6
    x_bound: int = 5000
    max_bits: int = 1 << 16
    cache: Path = ROOT / "data" / "pell_pair_witnesses.json"


def run(cfg: PellPairConfig, use_cache: bool) -> bool:
    cache = WitnessCache(cfg.cache if use_cache else None)
    ok = True
    for a in cfg.bases:
        t0 = time.perf_counter()
        report = verify_pell_theorem3(
            a, cfg.k_max, cfg.witness_bound, cfg.x_bound, cache=cache, max_bits=cfg.max_bits
        )
        dt = time.perf_counter() - t0
        for c in report.forward:
            size = c.witness.max_entry().bit_length() if c.witness else 0
            print(f"a={a} k={c.k}: {c.status:12} {c.method:16} witness bits={size}")
        held = sum(c.holds for c in report.backward)
        print(f"a={a} backward: {len(report.backward)} checks, formula true on {held}, ok={report.ok} ({dt:.2f}s)")
        ok &= report.ok
    cache.path = cfg.cache
    cache.save()
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--fresh", action="store_true", help="ignore the cache and search again")
    args = ap.parse_args()
    raise SystemExit(0 if run(PellPairConfig(k_max=args.k_max), not args.fresh) else 1)


if __name__ == "__main__":
    main()
