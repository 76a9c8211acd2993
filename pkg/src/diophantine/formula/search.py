"""Bounded satisfiability search for formulas.

``eval_bounded(f, v, B)`` has the same meaning as
:func:`~diophantine.formula.semantics.eval_bounded_naive`: every ``∃`` ranges
over ``0..B``.  Instead of nested loops it runs a depth-first search over the
binders with three kinds of pruning, so bounds in the millions stay usable:

* an equation with a single unknown left is solved for its integer roots;
* congruences and divisibility with a known modulus restrict an unknown to a
  residue class (several are merged by CRT);
* every monomial of one side of ``L <= R`` (or ``=``) is at most the upper
  bound of the other side, which caps the unknowns it contains, and
  symmetric reasoning yields lower bounds.

Disjunctions are split before branching on values.
"""

from __future__ import annotations

import math
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
    Ne,
    Or,
    Term,
    Var,
)


class SearchLimitExceeded(RuntimeError):
    """The node budget ran out before the search was decided."""


# sparse polynomials over search variables: {((vid, exp), ...): coef}
SPoly = dict


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _spoly_add(p: SPoly, q: SPoly, sign: int = 1) -> SPoly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + sign * c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _spoly_mul(p: SPoly, q: SPoly) -> SPoly:
    out: SPoly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _to_spoly(t: Term, env: Sequence) -> SPoly:
    """``env[i]`` is ``("c", value)`` for a parameter or ``("v", vid)`` for a binder."""
    if isinstance(t, Const):
        return {(): t.value} if t.value else {}
    if isinstance(t, Var):
        kind, x = env[t.index]
        if kind == "c":
            return {(): x} if x else {}
        return {((x, 1),): 1}
    if isinstance(t, Add):
        return _spoly_add(_to_spoly(t.left, env), _to_spoly(t.right, env))
    if isinstance(t, Mul):
        return _spoly_mul(_to_spoly(t.left, env), _to_spoly(t.right, env))
    raise TypeError(f"cannot search over term {t!r}")


def _spoly_vars(p: SPoly) -> set[int]:
    return {v for m in p for v, _ in m}


@dataclass
class _Atom:
    kind: type
    sides: tuple  # SPolys: (L, R) or (L, R, M)
    vars: frozenset


def _substitute(p: SPoly, val: list) -> SPoly:
    """Plug in assigned variables; the result only mentions unassigned ones."""
    out: SPoly = {}
    for m, c in p.items():
        rest = []
        for v, e in m:
            x = val[v]
            if x is None:
                rest.append((v, e))
            else:
                c *= x**e
                if not c:
                    break
        if c:
            key = tuple(rest)
            out[key] = out.get(key, 0) + c
    return {m: c for m, c in out.items() if c}


def _const(p: SPoly) -> int:
    return p.get((), 0)


def _ground_truth(kind: type, vals: list[int]) -> bool:
    a, b = vals[0], vals[1]
    if kind is Eq:
        return a == b
    if kind is Le:
        return a <= b
    if kind is Lt:
        return a < b
    if kind is Ne:
        return a != b
    if kind is Dvd:
        return b == 0 if a == 0 else b % a == 0
    m = vals[2]
    return a == b if m == 0 else (a - b) % m == 0


# integer root finding for univariate polynomials given as {exp: coef}


def _peval(coeffs: dict[int, int], z: int) -> int:
    return sum(c * z**e for e, c in coeffs.items())


def _deriv(coeffs: dict[int, int]) -> dict[int, int]:
    return {e - 1: c * e for e, c in coeffs.items() if e}


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _monotone_pieces(coeffs: dict[int, int], lo: int, hi: int) -> list[int]:
    """Sorted integer breakpoints ``lo = b0 <= ... <= bk = hi``; P is monotone on each piece."""
    deg = max(coeffs, default=0)
    if deg <= 1 or lo >= hi:
        return [lo, hi]
    d = _deriv(coeffs)
    pts = [lo]
    sub = _monotone_pieces(d, lo, hi)
    for a, b in zip(sub, sub[1:]):
        sa, sb = _sign(_peval(d, a)), _sign(_peval(d, b))
        if sa * sb < 0:
            # derivative is monotone on [a, b]: find last c with sign(d(c)) == sa
            l, r = a, b
            while r - l > 1:
                mid = (l + r) // 2
                if _sign(_peval(d, mid)) == sa:
                    l = mid
                else:
                    r = mid
            pts += [l, r]
        pts.append(b)
    return sorted(set(pts))


def int_roots(coeffs: dict[int, int], lo: int, hi: int) -> list[int] | None:
    """Integer roots in ``[lo, hi]``; None if the polynomial is identically zero."""
    coeffs = {e: c for e, c in coeffs.items() if c}
    if not coeffs:
        return None
    if lo > hi:
        return []
    deg = max(coeffs)
    if deg == 0:
        return []
    if deg == 1 and len(coeffs) <= 2:
        c1, c0 = coeffs[1], coeffs.get(0, 0)
        if c0 % c1:
            return []
        z = -c0 // c1
        return [z] if lo <= z <= hi else []
    if deg == 2 and set(coeffs) <= {0, 1, 2}:
        a, b, c = coeffs[2], coeffs.get(1, 0), coeffs.get(0, 0)
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        s = math.isqrt(disc)
        if s * s != disc:
            return []
        out = set()
        for num in (-b + s, -b - s):
            if num % (2 * a) == 0:
                z = num // (2 * a)
                if lo <= z <= hi:
                    out.add(z)
        return sorted(out)
    roots = set()
    pts = _monotone_pieces(coeffs, lo, hi)
    if len(pts) == 1:
        pts = pts * 2
    for a, b in zip(pts, pts[1:]):
        fa, fb = _peval(coeffs, a), _peval(coeffs, b)
        if fa == 0:
            roots.add(a)
        if fb == 0:
            roots.add(b)
        if _sign(fa) * _sign(fb) < 0:
            l, r = a, b
            sa = _sign(fa)
            while r - l > 1:
                mid = (l + r) // 2
                fm = _peval(coeffs, mid)
                if fm == 0:
                    roots.add(mid)
                    break
                if _sign(fm) == sa:
                    l = mid
                else:
                    r = mid
    return sorted(roots)


def _iroot_floor(n: int, e: int) -> int:
    """Largest r >= 0 with r**e <= n (n >= 0)."""
    if n < 0:
        return -1
    if e == 1:
        return n
    if e == 2:
        return math.isqrt(n)
    if n < 2:
        return n
    # Newton iteration from above
    r = 1 << (n.bit_length() // e + 1)
    while True:
        nxt = ((e - 1) * r + n // r ** (e - 1)) // e
        if nxt >= r:
            break
        r = nxt
    while r**e > n:
        r -= 1
    while (r + 1) ** e <= n:
        r += 1
    return r


def _iroot_ceil(n: int, e: int) -> int:
    """Smallest r >= 0 with r**e >= n."""
    if n <= 0:
        return 0
    r = _iroot_floor(n, e)
    return r if r**e >= n else r + 1


def _crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    # r1 + m1*k ≡ r2 (mod m2)
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % l, l


def _linear_congruence(c: int, r: int, m: int) -> tuple[int, int] | None:
    """Solutions of ``c*z + r ≡ 0 (mod m)`` as ``z ≡ z0 (mod m')``; m > 0."""
    c %= m
    r %= m
    g = math.gcd(c, m)
    if r % g:
        return None
    m2 = m // g
    if m2 == 1:
        return 0, 1
    z0 = (-r // g * pow(c // g, -1, m2)) % m2
    return z0, m2


class _Search:
    def __init__(self, nvars: int, bound: int, node_limit: int | None):
        self.nvars = nvars
        self.bound = bound
        self.node_limit = node_limit
        self.nodes = 0

    def run(self, items: list, val: list) -> list | None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchLimitExceeded(f"more than {self.node_limit} search nodes")
        atoms: list[_Atom] = []
        ors: list[list] = []
        stack = list(items)
        while stack:
            it = stack.pop()
            if isinstance(it, _Atom):
                if all(val[v] is not None for v in it.vars):
                    vals = [_const(_substitute(s, val)) for s in it.sides]
                    if not _ground_truth(it.kind, vals):
                        return None
                else:
                    atoms.append(it)
            elif it[0] == "and":
                stack.extend(it[1])
            else:
                ors.append(it[1])
        if ors:
            first, rest = ors[0], [("or", o) for o in ors[1:]]
            for branch in first:
                got = self.run(atoms + rest + [branch], list(val))
                if got is not None:
                    return got
            return None
        if not atoms:
            return val
        choice = self._choose(atoms, val)
        if choice is None:
            return None
        vid, candidates = choice
        for x in candidates:
            val[vid] = x
            got = self.run(atoms, val)
            if got is not None:
                return got
        val[vid] = None
        return None

    # domain reasoning

    def _choose(self, atoms: list[_Atom], val: list):
        B = self.bound
        subs = [(a, [_substitute(s, val) for s in a.sides]) for a in atoms]
        free = sorted({v for a in atoms for v in a.vars if val[v] is None})
        lo = {v: 0 for v in free}
        hi = {v: B for v in free}
        for _ in range(4):
            changed = False
            for atom, sides in subs:
                if atom.kind in (Eq, Le, Lt):
                    changed |= self._propagate(atom.kind, sides[0], sides[1], lo, hi)
            if not changed:
                break
            if any(lo[v] > hi[v] for v in free):
                return None

        best = None
        for z in free:
            if lo[z] > hi[z]:
                return None
            explicit: list[int] | None = None
            residue = (0, 1)
            occurrences = 0
            for atom, sides in subs:
                if z not in atom.vars:
                    continue
                occurrences += 1
                unknown = _spoly_vars(sides[0]) | _spoly_vars(sides[1])
                if atom.kind is ModCong:
                    unknown |= _spoly_vars(sides[2])
                if unknown != {z}:
                    continue
                if atom.kind is Eq:
                    coeffs = _univariate(_spoly_add(sides[0], sides[1], -1), z)
                    roots = int_roots(coeffs, lo[z], hi[z])
                    if roots is not None:
                        explicit = roots if explicit is None else [r for r in explicit if r in roots]
                elif atom.kind in (Dvd, ModCong):
                    cls = _congruence(atom.kind, sides, z)
                    if cls is False:
                        return None
                    if cls is None:
                        continue
                    if cls[0] == "value":
                        explicit = [cls[1]] if explicit is None else [x for x in explicit if x == cls[1]]
                    else:
                        merged = _crt(residue[0], residue[1], cls[1], cls[2])
                        if merged is None:
                            return None
                        residue = merged
            r, m = residue
            if explicit is not None:
                cands = [x for x in explicit if lo[z] <= x <= hi[z] and x % m == r % m]
                size = len(cands)
            else:
                first = lo[z] + ((r - lo[z]) % m)
                size = 0 if first > hi[z] else (hi[z] - first) // m + 1
                cands = range(first, hi[z] + 1, m)
            key = (size, -occurrences, z)
            if best is None or key < best[0]:
                best = (key, z, cands)
            if size == 0:
                return None
        return best[1], best[2]

    def _propagate(self, kind: type, left: SPoly, right: SPoly, lo: dict, hi: dict) -> bool:
        changed = False
        strict = 1 if kind is Lt else 0
        pairs = [(left, right, strict)]
        if kind is Eq:
            pairs.append((right, left, 0))
        for small, big, extra in pairs:
            # every monomial of `small` is <= ub(big) - extra
            cap = _upper(big, hi) - extra
            for m, c in small.items():
                if c <= 0 or not m:
                    continue
                for z, e in m:
                    others = _lower_mono(c, m, z, lo)
                    if others <= 0:
                        continue
                    new_hi = _iroot_floor(cap // others, e) if cap >= 0 else -1
                    if new_hi < hi[z]:
                        hi[z] = new_hi
                        changed = True
            # lower bounds: sum over monomials of `big` with z >= lb(small) + extra
            need_total = _lower(small, lo) + extra
            if need_total <= 0:
                continue
            zvars = _spoly_vars(big)
            for z in zvars:
                with_z = [(m, c) for m, c in big.items() if any(v == z for v, _ in m)]
                if len(with_z) != 1:
                    continue
                m, c = with_z[0]
                if c <= 0:
                    continue
                rest = {mm: cc for mm, cc in big.items() if mm != m}
                need = need_total - _upper(rest, hi)
                if need <= 0:
                    continue
                e = dict(m)[z]
                others = _upper_mono(c, m, z, hi)
                if others <= 0:
                    continue
                new_lo = _iroot_ceil(-(-need // others), e)
                if new_lo > lo[z]:
                    lo[z] = new_lo
                    changed = True
        return changed


def _congruence(kind: type, sides: list, z: int):
    """What a divisibility/congruence atom with sole unknown z says about z.

    ``("class", r, m)`` for ``z ≡ r (mod m)``, ``("value", z0)`` when the
    modulus is 0, False when unsatisfiable, None when the atom does not have
    the solvable shape (z in the modulus, or z not linear).
    """
    if kind is Dvd:
        mod_p, diff = sides[0], sides[1]
    else:
        mod_p, diff = sides[2], _spoly_add(sides[0], sides[1], -1)
    if _spoly_vars(mod_p):
        return None
    m = abs(_const(mod_p))
    coeffs = _univariate(diff, z)
    if any(e > 1 for e in coeffs):
        return None
    c, r = coeffs.get(1, 0), coeffs.get(0, 0)
    if m == 0:
        if c == 0 or r % c:
            return False if c else None
        z0 = -r // c
        return ("value", z0) if z0 >= 0 else False
    sol = _linear_congruence(c, r, m)
    return False if sol is None else ("class", sol[0], sol[1])


def _univariate(p: SPoly, z: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for m, c in p.items():
        e = 0
        for v, k in m:
            if v == z:
                e = k
        out[e] = out.get(e, 0) + c
    return out


def _upper(p: SPoly, hi: dict) -> int:
    total = 0
    for m, c in p.items():
        t = c
        for v, e in m:
            t *= hi[v] ** e
        total += t if c > 0 else 0
    return total


def _lower(p: SPoly, lo: dict) -> int:
    total = 0
    for m, c in p.items():
        t = c
        for v, e in m:
            t *= lo[v] ** e
        total += t if c > 0 else 0
    return total


def _lower_mono(c: int, m: tuple, z: int, lo: dict) -> int:
    t = c
    for v, e in m:
        if v != z:
            t *= lo[v] ** e
    return t


def _upper_mono(c: int, m: tuple, z: int, hi: dict) -> int:
    t = c
    for v, e in m:
        if v != z:
            t *= hi[v] ** e
    return t


def _prepare(f: Formula, v: Sequence[int]):
    paths: list[tuple[int, ...]] = []

    def go(g: Formula, env: list, path: tuple[int, ...]):
        if isinstance(g, (And, Or)):
            tag = "and" if isinstance(g, And) else "or"
            return (tag, [go(g.left, env, path + (0,)), go(g.right, env, path + (1,))])
        if isinstance(g, Exists):
            vid = len(paths)
            paths.append(path)
            return go(g.body, [("v", vid)] + env, path + (0,))
        if isinstance(g, ModCong):
            terms = (g.left, g.right, g.modulus)
        else:
            terms = (g.left, g.right)
        sides = tuple(_to_spoly(t, env) for t in terms)
        return _Atom(type(g), sides, frozenset(set().union(*(_spoly_vars(s) for s in sides))))

    root = go(f, [("c", x) for x in v], ())
    return root, paths


def search(
    f: Formula, v: Sequence[int], bound: int, node_limit: int | None = None
) -> dict[tuple[int, ...], int] | None:
    """Binder values (keyed by path) making ``f`` true at ``v`` within ``bound``, or None.

    Binders the search never needed to constrain are omitted; any value,
    in particular 0, works for them.
    """
    root, paths = _prepare(f, v)
    engine = _Search(len(paths), bound, node_limit)
    got = engine.run([root], [None] * len(paths))
    if got is None:
        return None
    return {paths[i]: x for i, x in enumerate(got) if x is not None}


def eval_bounded(f: Formula, v: Sequence[int], bound: int, node_limit: int | None = None) -> bool:
    return search(f, v, bound, node_limit) is not None
