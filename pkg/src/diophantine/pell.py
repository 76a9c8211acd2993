"""Pell sequences ``x_n(a), y_n(a)`` for the radicand ``d = a*a - 1``.

``x_n + y_n*sqrt(d) = (a + sqrt(d))**n`` and these are all the natural
solutions of ``x*x - d*y*y = 1``.  :func:`enumerate_solutions` is a direct
scan that shares no code with the recurrence, so it can serve as the oracle
for that claim.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from diophantine.zsqrtd import QuadInt, power


@dataclass(frozen=True)
class PellBase:
    a: int

    def __post_init__(self):
        if self.a <= 1:
            raise ValueError(f"Pell base needs a > 1, got a={self.a}")

    @property
    def d(self) -> int:
        return self.a * self.a - 1

    @property
    def z1(self) -> QuadInt:
        return QuadInt(self.d, self.a, 1)


@dataclass(frozen=True)
class PellPair:
    base: PellBase
    n: int
    x: int
    y: int

    def as_quadint(self) -> QuadInt:
        return QuadInt(self.base.d, self.x, self.y)


class _Sequence:
    """Memo of ``(x_n, y_n)`` for one base; readers always see a full prefix."""

    def __init__(self, a: int):
        self.a = a
        self.d = a * a - 1
        self.pairs: list[tuple[int, int]] = [(1, 0)]
        self.lock = threading.Lock()

    def get(self, n: int) -> tuple[int, int]:
        pairs = self.pairs
        if n < len(pairs):
            return pairs[n]
        with self.lock:
            a, d = self.a, self.d
            x, y = self.pairs[-1]
            extra = []
            for _ in range(len(self.pairs), n + 1):
                x, y = x * a + d * y, x + y * a
                extra.append((x, y))
            # publish with a single rebinding so lock-free readers never see a torn list
            self.pairs = self.pairs + extra
            return self.pairs[n]


_memo: dict[int, _Sequence] = {}
_memo_lock = threading.Lock()


def _sequence(a: int) -> _Sequence:
    seq = _memo.get(a)
    if seq is None:
        with _memo_lock:
            seq = _memo.setdefault(a, _Sequence(a))
    return seq


def _as_base(base: PellBase | int) -> PellBase:
    return base if isinstance(base, PellBase) else PellBase(base)


def pell_pair(base: PellBase | int, n: int) -> PellPair:
    """``(x_n, y_n)`` from the recurrence ``x' = a*x + d*y``, ``y' = x + a*y``."""
    base = _as_base(base)
    if n < 0:
        raise ValueError("index must be natural")
    x, y = _sequence(base.a).get(n)
    return PellPair(base, n, x, y)


def xn(a: int, n: int) -> int:
    return pell_pair(a, n).x


def yn(a: int, n: int) -> int:
    return pell_pair(a, n).y


def pell_pair_pow(base: PellBase | int, n: int) -> PellPair:
    """Same pair as :func:`pell_pair`, via ``(a + sqrt(d))**n``.

    Used for the large indices needed by witness construction, where keeping
    the whole prefix in memory would be wasteful.
    """
    base = _as_base(base)
    z = power(base.z1, n)
    return PellPair(base, n, z.re, z.im)


def is_pell_solution(base: PellBase | int, x: int, y: int) -> bool:
    base = _as_base(base)
    return x * x - base.d * y * y == 1


def zn_embed(base: PellBase | int, n: int) -> QuadInt:
    return pell_pair(base, n).as_quadint()


def enumerate_solutions(base: PellBase | int, x_bound: int) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``1 <= x <= x_bound`` and ``x*x - d*y*y = 1``, by scanning x."""
    d = _as_base(base).d
    found = []
    for x in range(1, x_bound + 1):
        r = x * x - 1
        if r % d:
            continue
        q = r // d
        y = math.isqrt(q)
        if y * y == q:
            found.append((x, y))
    return found


def solution_index(base: PellBase | int, x: int, y: int) -> int | None:
    """The ``n`` with ``(x_n, y_n) = (x, y)``, or None.

    Stops at the first ``x_n > x``, so a solution missing from the sequence
    would show up as None rather than a hang.
    """
    base = _as_base(base)
    if not is_pell_solution(base, x, y):
        return None
    n = 0
    while True:
        p = pell_pair(base, n)
        if p.x > x:
            return None
        if (p.x, p.y) == (x, y):
            return n
        n += 1
