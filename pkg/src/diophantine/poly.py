"""Multivariate integer polynomials over variables ``0 .. num_vars-1``.

A :class:`Poly` maps dense exponent tuples to nonzero integer coefficients.
The dict never holds a zero coefficient, so two polynomials are equal exactly
when their dicts are.  Serialised monomial order is ascending lexicographic
on the exponent tuple.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Mapping, Sequence


class ArityError(ValueError):
    pass


class Poly:
    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.num_vars = num_vars
        clean: dict[tuple[int, ...], int] = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != num_vars:
                raise ArityError(f"exponent vector {exps} does not have length {num_vars}")
            if coef:
                clean[tuple(exps)] = clean.get(tuple(exps), 0) + coef
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, num_vars: int, terms: dict[tuple[int, ...], int]) -> Poly:
        p = cls.__new__(cls)
        p.num_vars = num_vars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c: int, num_vars: int) -> Poly:
        return cls._raw(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def var(cls, i: int, num_vars: int) -> Poly:
        if not 0 <= i < num_vars:
            raise ArityError(f"variable {i} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[i] = 1
        return cls._raw(num_vars, {tuple(exps): 1})

    @classmethod
    def zero(cls, num_vars: int) -> Poly:
        return cls._raw(num_vars, {})

    # ring structure

    def _same_arity(self, other: Poly) -> None:
        if self.num_vars != other.num_vars:
            raise ArityError(f"arity mismatch: {self.num_vars} vs {other.num_vars}")

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._same_arity(other)
            return other
        if isinstance(other, int):
            return Poly.constant(other, self.num_vars)
        return None

    def __add__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in q.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return q - self

    def __mul__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.num_vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("exponent must be natural")
        result = Poly.constant(1, self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def square(self) -> Poly:
        return self * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0."""
        return max((sum(e) for e in self.terms), default=0)

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(self.terms[e], e) for e in sorted(self.terms)]

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def __repr__(self) -> str:
        return f"Poly({self.num_vars}, {self.to_str()})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.num_vars)]
        parts = []
        for coef, exps in self.monomials():
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k]
            body = "*".join(factors)
            mag = abs(coef)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if coef < 0 else "+", text))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    # semantics

    def eval(self, values: Sequence[int]) -> int:
        if len(values) != self.num_vars:
            raise ArityError(f"expected {self.num_vars} values, got {len(values)}")
        powers: dict[tuple[int, int], int] = {}
        total = 0
        for exps, coef in self.terms.items():
            term = coef
            for i, k in enumerate(exps):
                if not k:
                    continue
                if k == 1:
                    term *= values[i]
                    continue
                key = (i, k)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = values[i] ** k
                term *= pw
            total += term
        return total

    __call__ = eval

    def substitute_prefix(self, values: Sequence[int]) -> Poly:
        """Fix the first ``len(values)`` variables; the rest are renumbered from 0."""
        j = len(values)
        out: dict[tuple[int, ...], int] = {}
        for exps, coef in self.terms.items():
            c = coef
            for i in range(j):
                if exps[i]:
                    c *= values[i] ** exps[i]
            if c:
                rest = exps[j:]
                out[rest] = out.get(rest, 0) + c
        return Poly._raw(self.num_vars - j, {e: c for e, c in out.items() if c})

    def evaluator(self) -> Callable[[Sequence[int]], int]:
        """A compiled ``values -> int`` function, for tight scanning loops."""
        if not self.terms:
            return lambda values: 0
        args = ", ".join(f"t{i}" for i in range(self.num_vars))
        pieces = []
        for coef, exps in self.monomials():
            factors = [repr(coef)] + [
                f"t{i}" if k == 1 else f"t{i}**{k}" for i, k in enumerate(exps) if k
            ]
            pieces.append("*".join(factors))
        unpack = f"    {args}, = values\n" if self.num_vars else ""
        src = f"def _f(values):\n{unpack}    return {' + '.join(pieces)}\n"
        namespace: dict = {}
        exec(src, namespace)
        return namespace["_f"]

    def remap(self, mapping: Mapping[int, int] | Sequence[int], num_vars: int) -> Poly:
        """Rename variable ``i`` to ``mapping[i]`` in a space of ``num_vars`` variables.

        ``eval(p.remap(f, n), v) == eval(p, [v[f[i]] for i in range(p.num_vars)])``.
        """
        if isinstance(mapping, Mapping):
            f = [mapping.get(i, i) for i in range(self.num_vars)]
        else:
            f = list(mapping)
        if len(f) != self.num_vars:
            raise ArityError("mapping must cover every variable")
        if len(set(f)) != len(f):
            raise ValueError(f"variable map {f} is not injective")
        if any(not 0 <= j < num_vars for j in f):
            raise ArityError(f"variable map {f} leaves range 0..{num_vars - 1}")
        out = {}
        for exps, coef in self.terms.items():
            new = [0] * num_vars
            for i, k in enumerate(exps):
                new[f[i]] = k
            out[tuple(new)] = coef
        return Poly._raw(num_vars, out)

    # interchange

    def to_json_obj(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "monomials": [{"coef": str(c), "exps": list(e)} for c, e in self.monomials()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> Poly:
        n = int(obj["num_vars"])
        terms: dict[tuple[int, ...], int] = {}
        for mono in obj["monomials"]:
            exps = tuple(int(k) for k in mono["exps"])
            if exps in terms:
                raise ValueError(f"duplicate exponent vector {list(exps)}")
            if any(k < 0 for k in exps):
                raise ValueError("negative exponent")
            terms[exps] = int(mono["coef"])
        return cls(n, terms)

    @classmethod
    def from_json(cls, text: str) -> Poly:
        return cls.from_json_obj(json.loads(text))


def p_add(p: Poly, q: Poly) -> Poly:
    p._same_arity(q)
    return p + q


def p_sub(p: Poly, q: Poly) -> Poly:
    p._same_arity(q)
    return p - q


def p_mul(p: Poly, q: Poly) -> Poly:
    p._same_arity(q)
    return p * q


def p_neg(p: Poly) -> Poly:
    return -p


def constant(c: int, n: int) -> Poly:
    return Poly.constant(c, n)


def var(i: int, n: int) -> Poly:
    return Poly.var(i, n)


def degree(p: Poly) -> int:
    return p.degree()


def remap(p: Poly, f: Mapping[int, int] | Iterable[int], n: int) -> Poly:
    return p.remap(f if isinstance(f, Mapping) else list(f), n)


def evaluate(p: Poly, v: Sequence[int]) -> int:
    return p.eval(v)
