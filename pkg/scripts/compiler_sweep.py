"""Compiler soundness and bounded completeness on the seeded formula corpus."""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter

from diophantine.formula.ast import depth
from diophantine.formula.corpus import CorpusConfig, check_agreement, corpus, parameter_vectors
from diophantine.formula.sexpr import to_sexpr


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--size", type=int, default=CorpusConfig.size)
    args = ap.parse_args()
    cfg = CorpusConfig(seed=args.seed, size=args.size)
    t0 = time.perf_counter()
    formulas, skipped = corpus(cfg)
    rng = random.Random(cfg.seed)
    bad = []
    for f, k in formulas:
        bad += check_agreement(f, k, parameter_vectors(k, cfg.entry_bound, rng), cfg.entry_bound)
    print(f"{len(formulas)} formulas ({skipped} skipped for box size), depths {dict(sorted(Counter(depth(f) for f, _ in formulas).items()))}")
    print(f"{len(bad)} disagreements in {time.perf_counter() - t0:.1f}s")
    for d in bad[:10]:
        print(f"  {d.kind} at v={d.v} t={d.t}: {to_sexpr(d.formula)}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
