"""Exact semantics of formulas over the naturals, and four-square decomposition."""

from __future__ import annotations

import math
from collections.abc import Sequence

from diophantine.formula.ast import (
    And,
    Dvd,
    Eq,
    Exists,
    Formula,
    Le,
    Lt,
    ModCong,
    Ne,
    Or,
    term_value,
)


def atom_holds(f: Formula, env: Sequence[int]) -> bool:
    """Truth of an atomic formula; divisibility and congruence are decided exactly."""
    a = term_value(f.left, env)
    b = term_value(f.right, env)
    if isinstance(f, Eq):
        return a == b
    if isinstance(f, Le):
        return a <= b
    if isinstance(f, Lt):
        return a < b
    if isinstance(f, Ne):
        return a != b
    if isinstance(f, Dvd):
        return b == 0 if a == 0 else b % a == 0
    if isinstance(f, ModCong):
        m = term_value(f.modulus, env)
        return a == b if m == 0 else (a - b) % m == 0
    raise TypeError(f"not an atom: {f!r}")


def eval_bounded_naive(f: Formula, v: Sequence[int], bound: int) -> bool:
    """Truth of ``f`` at ``v`` with every ``∃`` ranging over ``0..bound``, by plain enumeration.

    Exponential in the number of nested binders; it exists to be obviously
    right, and to check :func:`diophantine.formula.search.eval_bounded`.
    """

    def go(g: Formula, env: tuple[int, ...]) -> bool:
        if isinstance(g, And):
            return go(g.left, env) and go(g.right, env)
        if isinstance(g, Or):
            return go(g.left, env) or go(g.right, env)
        if isinstance(g, Exists):
            return any(go(g.body, (x,) + env) for x in range(bound + 1))
        return atom_holds(g, env)

    return go(f, tuple(v))


def holds_with(f: Formula, v: Sequence[int], witness: dict[tuple[int, ...], int]) -> bool:
    """Truth of ``f`` when each binder takes the value ``witness[path]`` (0 if absent)."""

    def go(g: Formula, env: tuple[int, ...], path: tuple[int, ...]) -> bool:
        if isinstance(g, And):
            return go(g.left, env, path + (0,)) and go(g.right, env, path + (1,))
        if isinstance(g, Or):
            return go(g.left, env, path + (0,)) or go(g.right, env, path + (1,))
        if isinstance(g, Exists):
            return go(g.body, (witness.get(path, 0),) + env, path + (0,))
        return atom_holds(g, env)

    return go(f, tuple(v), ())


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Lexicographically first ``(x, y, z, w)`` with ``x*x + y*y + z*z + w*w == n``.

    Brute force over ``x <= y <= z <= w`` (the first tuple in lexicographic
    order is always sorted, so nothing is lost).
    """
    if n < 0:
        raise ValueError("n must be natural")
    x = 0
    while 4 * x * x <= n:
        rx = n - x * x
        y = x
        while 3 * y * y <= rx:
            ry = rx - y * y
            z = y
            while 2 * z * z <= ry:
                rz = ry - z * z
                w = math.isqrt(rz)
                if w * w == rz:
                    return x, y, z, w
                z += 1
            y += 1
        x += 1
    raise AssertionError(f"no four-square decomposition of {n}")
