"""Compilation of formulas to a single polynomial equation.

A formula ``f`` with ``k`` parameters compiles to a polynomial ``p`` in
``k + m`` variables such that, over the naturals,

    f(v)  <=>  exists t in N^m with p(v ++ t) = 0.

Encodings: ``a = b`` is ``a - b``; ``a <= b`` is ``a + z - b`` and ``a < b`` is
``a + z + 1 - b`` with a slack dummy ``z``; ``a | b`` is ``a*z - b``;
``a ≡ b (mod c)`` is ``(a - b - c*z1)*(b - a - c*z2)``; ``a != b`` is
``a < b or b < a``; ``f or g`` is ``p_f * p_g``; ``f and g`` is
``p_f^2 + p_g^2``, except that a side which is already a sum of squares (or a
product of such) is added unsquared; ``∃`` turns the bound variable into the
last dummy of the body's block.  Dummy blocks are laid out left subtree first.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass

from diophantine.formula.ast import (
    Add,
    And,
    Const,
    Dvd,
    Eq,
    Exists,
    Formula,
    Le,
    Lt,
    ModCong,
    Mul,
    Named,
    Ne,
    Or,
    ScopeError,
    Term,
    Var,
    check_scope,
    term_value,
)
from diophantine.formula.semantics import atom_holds
from diophantine.poly import Poly


def term_poly(t: Term, n: int) -> Poly:
    """A term as a polynomial in ``n`` variables, de Bruijn index ``i`` being variable ``i``."""
    if isinstance(t, Const):
        return Poly.constant(t.value, n)
    if isinstance(t, Var):
        return Poly.var(t.index, n)
    if isinstance(t, Add):
        return term_poly(t.left, n) + term_poly(t.right, n)
    if isinstance(t, Mul):
        return term_poly(t.left, n) * term_poly(t.right, n)
    if isinstance(t, Named):
        raise ScopeError(f"unbound name {t.name!r}")
    raise TypeError(f"not a term: {t!r}")


def _widen(p: Poly, total: int) -> Poly:
    return p.remap(list(range(p.num_vars)), total)


def dummy_count(f: Formula) -> int:
    if isinstance(f, Eq):
        return 0
    if isinstance(f, (Le, Lt, Dvd)):
        return 1
    if isinstance(f, (Ne, ModCong)):
        return 2
    if isinstance(f, (And, Or)):
        return dummy_count(f.left) + dummy_count(f.right)
    if isinstance(f, Exists):
        return dummy_count(f.body) + 1
    raise TypeError(f"not a formula: {f!r}")


def _compile(f: Formula, k: int) -> tuple[Poly, int, bool]:
    """``(p, m, nonneg)``: p over ``k`` context variables then ``m`` dummies."""
    if isinstance(f, Eq):
        return term_poly(f.left, k) - term_poly(f.right, k), 0, False
    if isinstance(f, (Le, Lt, Dvd)):
        n = k + 1
        a, b = term_poly(f.left, n), term_poly(f.right, n)
        z = Poly.var(k, n)
        if isinstance(f, Le):
            return a + z - b, 1, False
        if isinstance(f, Lt):
            return a + z + 1 - b, 1, False
        return a * z - b, 1, False
    if isinstance(f, Ne):
        return _compile(Or(Lt(f.left, f.right), Lt(f.right, f.left)), k)
    if isinstance(f, ModCong):
        n = k + 2
        a, b, c = (term_poly(t, n) for t in (f.left, f.right, f.modulus))
        z1, z2 = Poly.var(k, n), Poly.var(k + 1, n)
        return (a - b - c * z1) * (b - a - c * z2), 2, False
    if isinstance(f, (And, Or)):
        pf, mf, nf = _compile(f.left, k)
        pg, mg, ng = _compile(f.right, k)
        total = k + mf + mg
        pf = _widen(pf, total)
        pg = pg.remap(list(range(k)) + [k + mf + j for j in range(mg)], total)
        if isinstance(f, Or):
            return pf * pg, mf + mg, nf and ng
        return (pf if nf else pf.square()) + (pg if ng else pg.square()), mf + mg, True
    if isinstance(f, Exists):
        pb, mb, nb = _compile(f.body, k + 1)
        total = k + mb + 1
        # body variable 0 is the bound one; 1..k the context; then its dummies
        mapping = [k + mb] + list(range(k)) + [k + j for j in range(mb)]
        return pb.remap(mapping, total), mb + 1, nb
    raise TypeError(f"not a formula: {f!r}")


def _hint(f: Formula, env: list[int], bound: int) -> list[int]:
    if isinstance(f, Eq):
        return []
    if isinstance(f, (Le, Lt, Dvd)):
        return [term_value(f.right, env)]
    if isinstance(f, Ne):
        return [term_value(f.right, env), term_value(f.left, env)]
    if isinstance(f, ModCong):
        return [term_value(f.left, env), term_value(f.right, env)]
    if isinstance(f, (And, Or)):
        return _hint(f.left, env, bound) + _hint(f.right, env, bound)
    return _hint(f.body, [bound] + env, bound) + [bound]


def witness_hint(f: Formula, v: Sequence[int], bound: int) -> list[int]:
    """Per-dummy bounds for ``compile_formula(f, len(v))``, without compiling."""
    return _hint(f, list(v), bound)


def _lift(f: Formula, env: tuple[int, ...], witness: dict, path: tuple[int, ...]) -> list[int] | None:
    if isinstance(f, Eq):
        return [] if atom_holds(f, env) else None
    if isinstance(f, (Le, Lt, Dvd, Ne, ModCong)):
        if not atom_holds(f, env):
            return None
        a, b = term_value(f.left, env), term_value(f.right, env)
        if isinstance(f, Le):
            return [b - a]
        if isinstance(f, Lt):
            return [b - a - 1]
        if isinstance(f, Dvd):
            return [0 if a == 0 else b // a]
        if isinstance(f, Ne):
            return [b - a - 1, 0] if a < b else [0, a - b - 1]
        m = term_value(f.modulus, env)
        if a >= b:
            return [(a - b) // m if m else 0, 0]
        return [0, (b - a) // m if m else 0]
    if isinstance(f, And):
        left = _lift(f.left, env, witness, path + (0,))
        if left is None:
            return None
        right = _lift(f.right, env, witness, path + (1,))
        return None if right is None else left + right
    if isinstance(f, Or):
        left = _lift(f.left, env, witness, path + (0,))
        if left is not None:
            return left + [0] * dummy_count(f.right)
        right = _lift(f.right, env, witness, path + (1,))
        return None if right is None else [0] * dummy_count(f.left) + right
    if isinstance(f, Exists):
        x = witness.get(path, 0)
        body = _lift(f.body, (x,) + env, witness, path + (0,))
        return None if body is None else body + [x]
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class CompiledDioph:
    params: int
    dummies: int
    poly: Poly
    formula: Formula | None = None

    def witness_hint(self, v: Sequence[int], bound: int) -> list[int]:
        """Per-dummy upper bounds.

        If the formula holds at ``v`` with every ``∃`` witness at most
        ``bound``, some dummy vector within these bounds is a zero.  Monotone in
        ``v`` and ``bound``.  Slack and quotient dummies are bounded by the
        value of the larger side of their atom, binder dummies by ``bound``.
        """
        if self.formula is None:
            raise ValueError("no source formula to derive hints from")
        return _hint(self.formula, list(v), bound)

    def lift(self, v: Sequence[int], witness: dict[tuple[int, ...], int]) -> list[int] | None:
        """Dummy vector for binder values ``witness`` (keyed by binder path), or None if false."""
        if self.formula is None:
            raise ValueError("no source formula to lift through")
        return _lift(self.formula, tuple(v), witness, ())

    def eval(self, v: Sequence[int], t: Sequence[int]) -> int:
        return self.poly.eval(list(v) + list(t))

    def to_json_obj(self) -> dict:
        obj = self.poly.to_json_obj()
        obj["params"] = self.params
        obj["dummies"] = self.dummies
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> CompiledDioph:
        poly = Poly.from_json_obj(obj)
        k, m = int(obj["params"]), int(obj["dummies"])
        if k + m != poly.num_vars:
            raise ValueError(f"params + dummies = {k + m} but num_vars = {poly.num_vars}")
        return cls(k, m, poly)


def compile_formula(f: Formula, k: int) -> CompiledDioph:
    check_scope(f, k)
    p, m, _ = _compile(f, k)
    return CompiledDioph(k, m, p, f)


class ScanTooLarge(RuntimeError):
    pass


def membership(
    cd: CompiledDioph,
    v: Sequence[int],
    bound: int | Sequence[int],
    max_points: int | None = None,
) -> tuple[int, ...] | None:
    """Lexicographically first dummy vector within ``bound`` that zeroes the polynomial.

    ``bound`` is one bound for every dummy or one per dummy.  With
    ``max_points`` set, refuses (``ScanTooLarge``) to scan a bigger box.
    """
    if len(v) != cd.params:
        raise ValueError(f"expected {cd.params} parameters, got {len(v)}")
    bounds = [bound] * cd.dummies if isinstance(bound, int) else list(bound)
    if len(bounds) != cd.dummies:
        raise ValueError(f"expected {cd.dummies} dummy bounds, got {len(bounds)}")
    if max_points is not None:
        points = 1
        for b in bounds:
            points *= b + 1
        if points > max_points:
            raise ScanTooLarge(f"{points} dummy vectors exceeds the cap of {max_points}")
    f = cd.poly.substitute_prefix(list(v)).evaluator()
    for t in itertools.product(*(range(b + 1) for b in bounds)):
        if f(t) == 0:
            return t
    return None
