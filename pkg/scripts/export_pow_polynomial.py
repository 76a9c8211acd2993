"""Write the compiled power polynomial to data/ together with its SHA-256."""

from __future__ import annotations

import argparse
import hashlib
from pathlib import Path

from diophantine.matiyasevich import pell_xy_polynomial, pow_polynomial

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "data")
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    for name, cd in (("pell_xy", pell_xy_polynomial()), ("pow", pow_polynomial())):
        text = cd.to_json() + "\n"
        digest = hashlib.sha256(text.encode()).hexdigest()
        (args.out / f"{name}_polynomial.json").write_text(text)
        (args.out / f"{name}_polynomial.sha256").write_text(f"{digest}  {name}_polynomial.json\n")
        print(
            f"{name}: params={cd.params} dummies={cd.dummies} degree={cd.poly.degree()} "
            f"monomials={len(cd.poly)} sha256={digest[:16]}"
        )


if __name__ == "__main__":
    main()
