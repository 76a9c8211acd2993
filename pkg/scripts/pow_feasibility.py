"""How large the power-formula witnesses get, and which grid points can be checked.

For ``x, y >= 1`` the witness contains a Pell-pair witness for base
``A = x_W(W + 1)`` (``W = max(x, y)``) at index ``y``, whose ``u`` is
``x_m(A)`` with ``m`` a multiple of ``y * y_y(A)``.  Its bit length is
about ``m * log2(2A)``; the table prints that estimate.
"""

from __future__ import annotations

import argparse
import math
import time
from dataclasses import dataclass

from diophantine.matiyasevich import POW_MAX_BITS, pow_positive_check
from diophantine.pell import pell_pair


@dataclass(frozen=True)
class PowGrid:
    x_max: int = 5
    y_max: int = 4
    max_bits: int = POW_MAX_BITS


def estimated_bits(x: int, y: int) -> float:
    if x == 0 or y == 0:
        return 0.0
    W = max(x, y)
    A = pell_pair(W + 1, W).x
    Y = pell_pair(A, y).y
    return y * Y * math.log2(2 * A)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-bits", type=int, default=PowGrid.max_bits)
    args = ap.parse_args()
    grid = PowGrid(max_bits=args.max_bits)
    print(f"{'x':>2} {'y':>2} {'est. bits of u':>16}  status")
    for x in range(grid.x_max + 1):
        for y in range(grid.y_max + 1):
            est = estimated_bits(x, y)
            t0 = time.perf_counter()
            c = pow_positive_check(x, y, grid.max_bits)
            dt = time.perf_counter() - t0
            shown = f"{est:.3g}" if est < 1e15 else "astronomical"
            print(f"{x:>2} {y:>2} {shown:>16}  {c.status} ({dt:.2f}s)")


if __name__ == "__main__":
    main()
