r"""The ring $\mathbb{Z}[\sqrt{d}]$ for a natural radicand ``d``.

Elements are kept in ``re + im*sqrt(d)`` normal form, so structural equality
is value equality.  The order is built in layers: :func:`sq_le` compares
``a*sqrt(c)`` with ``b*sqrt(d)``, :func:`nonnegg` decides the sign of
``a*sqrt(c) + b*sqrt(d)``, :func:`nonneg` specialises it to ``c = 1`` and
``z <= w`` is ``nonneg(w - z)``.  No floating point is used anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def sq_le(a: int, c: int, b: int, d: int) -> bool:
    """``a*sqrt(c) <= b*sqrt(d)`` for naturals, i.e. ``c*a*a <= d*b*b``."""
    return c * a * a <= d * b * b


def nonnegg(c: int, d: int, a: int, b: int) -> bool:
    """Whether ``a*sqrt(d) + b*sqrt(c) >= 0``.

    Four clauses on the signs of ``(a, b)``, a negative integer being
    ``-(m + 1)``.  Note the pairing: ``a`` goes with ``sqrt(d)`` and ``b`` with
    ``sqrt(c)``, which is what makes ``nonnegg(d, 1, re, im)`` the sign of
    ``re + im*sqrt(d)``.
    """
    if a >= 0 and b >= 0:
        return True
    if a >= 0:
        # b = -(m + 1): (m + 1)*sqrt(c) <= a*sqrt(d)
        return sq_le(-b, c, a, d)
    if b >= 0:
        return sq_le(-a, d, b, c)
    return False


class RadicandMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuadInt:
    """``re + im*sqrt(d)``."""

    d: int
    re: int
    im: int = 0

    def __post_init__(self):
        if self.d < 0:
            raise ValueError(f"radicand must be natural, got {self.d}")

    @classmethod
    def one(cls, d: int) -> QuadInt:
        return cls(d, 1, 0)

    @classmethod
    def zero(cls, d: int) -> QuadInt:
        return cls(d, 0, 0)

    def _check(self, other: QuadInt) -> None:
        if self.d != other.d:
            raise RadicandMismatch(f"radicands differ: {self.d} vs {other.d}")

    def _coerce(self, other) -> QuadInt | None:
        if isinstance(other, QuadInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return QuadInt(self.d, other, 0)
        return None

    def __add__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return QuadInt(self.d, self.re + w.re, self.im + w.im)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(self.d, -self.re, -self.im)

    def __sub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return QuadInt(self.d, self.re - w.re, self.im - w.im)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return w - self

    def __mul__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        x, y = self.re, self.im
        return QuadInt(self.d, x * w.re + self.d * y * w.im, x * w.im + y * w.re)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        return power(self, n)

    def conj(self) -> QuadInt:
        return QuadInt(self.d, self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re - self.d * self.im * self.im

    def nonneg(self) -> bool:
        return nonnegg(self.d, 1, self.re, self.im)

    def __le__(self, other: QuadInt) -> bool:
        return le(self, other)

    def __lt__(self, other: QuadInt) -> bool:
        return lt(self, other)

    def __ge__(self, other: QuadInt) -> bool:
        return le(other, self)

    def __gt__(self, other: QuadInt) -> bool:
        return lt(other, self)

    def __str__(self) -> str:
        return format_quadint(self)


def add(z: QuadInt, w: QuadInt) -> QuadInt:
    z._check(w)
    return z + w


def mul(z: QuadInt, w: QuadInt) -> QuadInt:
    z._check(w)
    return z * w


def conj(z: QuadInt) -> QuadInt:
    return z.conj()


def norm(z: QuadInt) -> int:
    return z.norm()


def nonneg(z: QuadInt) -> bool:
    return z.nonneg()


def le(z: QuadInt, w: QuadInt) -> bool:
    z._check(w)
    return (w - z).nonneg()


def lt(z: QuadInt, w: QuadInt) -> bool:
    return le(z, w) and not le(w, z)


def power(z: QuadInt, n: int) -> QuadInt:
    """``z**n`` by binary exponentiation; ``z**0`` is one."""
    if n < 0:
        raise ValueError("exponent must be natural")
    result = QuadInt.one(z.d)
    base = z
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


# Rendering: "7+4√3", "2-1√3", "-5+0√2".  "sqrt" is accepted in place of "√".
_QUAD_RE = re.compile(r"^\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*(?:√|sqrt)\s*(\d+)\s*$")


def format_quadint(z: QuadInt) -> str:
    sign = "-" if z.im < 0 else "+"
    return f"{z.re}{sign}{abs(z.im)}√{z.d}"


def parse_quadint(text: str) -> QuadInt:
    m = _QUAD_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse {text!r} as re+im√d")
    re_part, sign, im_part, d = m.groups()
    im = int(im_part) if sign == "+" else -int(im_part)
    return QuadInt(int(d), int(re_part), im)
