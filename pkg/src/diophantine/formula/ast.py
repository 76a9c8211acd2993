"""Terms and formulas over natural numbers, with de Bruijn-indexed variables.

``Var(i)`` refers to the ``i``-th entry of the environment, innermost binder
first: at top level ``Var(i)`` is parameter ``i``, and under one ``Exists``
``Var(0)`` is the bound variable and ``Var(i + 1)`` is parameter ``i``.

Writing de Bruijn indices by hand is error prone, so formulas can also be
built with :class:`Named` variables and closed afterwards with
:func:`exists` and :func:`close`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from typing import Union


class ScopeError(ValueError):
    pass


# terms


class Term:
    def __add__(self, other):
        return Add(self, as_term(other))

    def __radd__(self, other):
        return Add(as_term(other), self)

    def __mul__(self, other):
        return Mul(self, as_term(other))

    def __rmul__(self, other):
        return Mul(as_term(other), self)


@dataclass(frozen=True)
class Const(Term):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("constants are natural numbers")


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Named(Term):
    """A construction-time variable; must be bound by :func:`exists` or :func:`close`."""

    name: str


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


TermLike = Union[Term, int]


def as_term(t: TermLike) -> Term:
    if isinstance(t, Term):
        return t
    if isinstance(t, int):
        return Const(t)
    raise TypeError(f"not a term: {t!r}")


def term_value(t: Term, env: Sequence[int]) -> int:
    if isinstance(t, Var):
        return env[t.index]
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Add):
        return term_value(t.left, env) + term_value(t.right, env)
    if isinstance(t, Mul):
        return term_value(t.left, env) * term_value(t.right, env)
    raise ScopeError(f"unbound name {t.name!r}" if isinstance(t, Named) else f"bad term {t!r}")


# formulas


class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Le(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Ne(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Dvd(Formula):
    """``left`` divides ``right``; ``0 | n`` only for ``n = 0``."""

    left: Term
    right: Term


@dataclass(frozen=True)
class ModCong(Formula):
    """``left ≡ right (mod modulus)``; modulus 0 means equality."""

    left: Term
    right: Term
    modulus: Term


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    body: Formula
    name: str | None = None


ATOMS = (Eq, Le, Lt, Ne, Dvd, ModCong)
BINARY_ATOMS = (Eq, Le, Lt, Ne, Dvd)


def eq(a: TermLike, b: TermLike) -> Eq:
    return Eq(as_term(a), as_term(b))


def le(a: TermLike, b: TermLike) -> Le:
    return Le(as_term(a), as_term(b))


def lt(a: TermLike, b: TermLike) -> Lt:
    return Lt(as_term(a), as_term(b))


def ne(a: TermLike, b: TermLike) -> Ne:
    return Ne(as_term(a), as_term(b))


def dvd(a: TermLike, b: TermLike) -> Dvd:
    return Dvd(as_term(a), as_term(b))


def cong(a: TermLike, b: TermLike, m: TermLike) -> ModCong:
    return ModCong(as_term(a), as_term(b), as_term(m))


def conj(*fs: Formula) -> Formula:
    """Right-nested conjunction of one or more formulas."""
    if not fs:
        raise ValueError("empty conjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        raise ValueError("empty disjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, ModCong):
        return (f.left, f.right, f.modulus)
    return (f.left, f.right)


def _rebuild_atom(f: Formula, terms: Sequence[Term]) -> Formula:
    return type(f)(*terms)


def flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return flatten_and(f.left) + flatten_and(f.right)
    return [f]


def flatten_or(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return flatten_or(f.left) + flatten_or(f.right)
    return [f]


# generic term rewriting under binders


def _map_terms(f: Formula, fn: Callable[[Term, int], Term], depth: int = 0) -> Formula:
    if isinstance(f, ATOMS):
        return _rebuild_atom(f, [fn(t, depth) for t in atom_terms(f)])
    if isinstance(f, (And, Or)):
        return type(f)(_map_terms(f.left, fn, depth), _map_terms(f.right, fn, depth))
    if isinstance(f, Exists):
        return Exists(_map_terms(f.body, fn, depth + 1), f.name)
    raise TypeError(f"not a formula: {f!r}")


def _map_term(t: Term, leaf: Callable[[Term], Term]) -> Term:
    if isinstance(t, (Add, Mul)):
        return type(t)(_map_term(t.left, leaf), _map_term(t.right, leaf))
    return leaf(t)


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every de Bruijn index ``>= cutoff``."""

    def leaf(x: Term) -> Term:
        if isinstance(x, Var) and x.index >= cutoff:
            return Var(x.index + by)
        return x

    return _map_term(t, leaf)


def exists(name: str, body: Formula) -> Exists:
    """``∃ name, body`` where ``body`` mentions the binder as ``Named(name)``."""

    def fn(t: Term, depth: int) -> Term:
        def leaf(x: Term) -> Term:
            if isinstance(x, Var) and x.index >= depth:
                return Var(x.index + 1)
            if isinstance(x, Named) and x.name == name:
                return Var(depth)
            return x

        return _map_term(t, leaf)

    return Exists(_map_terms(body, fn), name)


def exists_many(names: Sequence[str], body: Formula) -> Formula:
    """``∃ n0, ∃ n1, ..., body``; the first name is the outermost binder."""
    for name in reversed(names):
        body = exists(name, body)
    return body


def close(f: Formula, params: Sequence[str]) -> Formula:
    """Turn the named parameters ``params[i]`` into top-level indices ``i``."""
    index = {p: i for i, p in enumerate(params)}
    if len(index) != len(params):
        raise ValueError("duplicate parameter name")

    def fn(t: Term, depth: int) -> Term:
        def leaf(x: Term) -> Term:
            if isinstance(x, Named):
                if x.name not in index:
                    raise ScopeError(f"unbound name {x.name!r}")
                return Var(depth + index[x.name])
            return x

        return _map_term(t, leaf)

    return _map_terms(f, fn)


def instantiate(f: Formula, args: Sequence[TermLike]) -> Formula:
    """Substitute ``args[i]`` for parameter ``i`` of ``f``.

    The argument terms live in the caller's scope (named or de Bruijn); they
    are shifted as they pass under binders.
    """
    args = [as_term(a) for a in args]

    def fn(t: Term, depth: int) -> Term:
        def leaf(x: Term) -> Term:
            if isinstance(x, Var) and x.index >= depth:
                i = x.index - depth
                if i >= len(args):
                    raise ScopeError(f"parameter {i} not supplied")
                return shift(args[i], depth)
            return x

        return _map_term(t, leaf)

    return _map_terms(f, fn)


# scope


def term_max_index(t: Term) -> int:
    """Largest de Bruijn index used, or -1."""
    if isinstance(t, Var):
        return t.index
    if isinstance(t, (Add, Mul)):
        return max(term_max_index(t.left), term_max_index(t.right))
    if isinstance(t, Named):
        raise ScopeError(f"unbound name {t.name!r}")
    return -1


def param_count(f: Formula, depth: int = 0) -> int:
    """Smallest ``k`` for which ``f`` is well scoped with ``k`` parameters."""
    if isinstance(f, ATOMS):
        return max(0, max(term_max_index(t) for t in atom_terms(f)) + 1 - depth)
    if isinstance(f, (And, Or)):
        return max(param_count(f.left, depth), param_count(f.right, depth))
    if isinstance(f, Exists):
        return param_count(f.body, depth + 1)
    raise TypeError(f"not a formula: {f!r}")


def check_scope(f: Formula, k: int) -> None:
    need = param_count(f)
    if need > k:
        raise ScopeError(f"formula uses {need} parameters but only {k} are declared")


def binders(f: Formula, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Exists]]:
    """Every ``Exists`` node with its path (child positions from the root), pre-order."""
    if isinstance(f, Exists):
        yield path, f
        yield from binders(f.body, path + (0,))
    elif isinstance(f, (And, Or)):
        yield from binders(f.left, path + (0,))
        yield from binders(f.right, path + (1,))


def binder_paths(f: Formula) -> dict[str, tuple[int, ...]]:
    """Map binder names to paths; names must be unique for this to make sense."""
    out: dict[str, tuple[int, ...]] = {}
    for path, node in binders(f):
        if node.name is None:
            continue
        if node.name in out:
            raise ValueError(f"binder name {node.name!r} is not unique")
        out[node.name] = path
    return out


def depth(f: Formula) -> int:
    if isinstance(f, ATOMS):
        return 1
    if isinstance(f, (And, Or)):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


# pretty printing


_PREC = {Add: 1, Mul: 2}


def show_term(t: Term, names: Sequence[str], prec: int = 0) -> str:
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Var):
        return names[t.index] if t.index < len(names) else f"#{t.index}"
    if isinstance(t, Named):
        return t.name
    op = "+" if isinstance(t, Add) else "*"
    p = _PREC[type(t)]
    text = f"{show_term(t.left, names, p)} {op} {show_term(t.right, names, p + 1)}"
    return f"({text})" if p < prec else text


_REL = {Eq: "=", Le: "≤", Lt: "<", Ne: "≠", Dvd: "∣"}


def show(f: Formula, params: Sequence[str] | None = None, indent: int = 0) -> str:
    """Multi-line infix rendering; conjunctions and disjunctions print one operand per line."""
    if params is None:
        params = [f"v{i}" for i in range(param_count(f))]
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"z{counter[0] - 1}"

    def go(g: Formula, names: list[str], ind: int) -> list[str]:
        pad = "  " * ind
        if isinstance(g, ModCong):
            a, b, m = (show_term(t, names) for t in atom_terms(g))
            return [f"{pad}{a} ≡ {b} (mod {m})"]
        if isinstance(g, ATOMS):
            a, b = (show_term(t, names) for t in atom_terms(g))
            return [f"{pad}{a} {_REL[type(g)]} {b}"]
        if isinstance(g, (And, Or)):
            parts = flatten_and(g) if isinstance(g, And) else flatten_or(g)
            word = "and" if isinstance(g, And) else "or"
            lines = [f"{pad}{word}"]
            for part in parts:
                lines += go(part, names, ind + 1)
            return lines
        chain = []
        while isinstance(g, Exists):
            chain.append(g.name or fresh())
            names = [chain[-1]] + names
            g = g.body
        return [f"{pad}∃ {' '.join(chain)}"] + go(g, names, ind + 1)

    return "\n".join(go(f, list(params), indent))
