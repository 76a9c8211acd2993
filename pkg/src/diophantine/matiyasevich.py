"""The Pell-pair relation and the power function as Diophantine formulas.

:func:`pell_xy_formula` is the four-parameter formula ``(a, k, x, y)`` true
(for ``a > 1``) exactly when ``x = x_k(a)`` and ``y = y_k(a)``.
:func:`pow_formula` builds ``w = x**y`` on top of it.  Neither formula
carries the hypothesis ``a > 1``; callers enforce it.

Pell equations ``x*x - (a*a - 1)*y*y = 1`` are written without subtraction as
``x*x + y*y = a*a*y*y + 1``, which is the same integer equation.

Witnesses for these formulas are enormous (the ``v`` of a Pell-pair witness
is itself a Pell number whose index is a multiple of ``y``), so they are
built from the known structure and then re-checked with plain arithmetic
and against the compiled polynomial, never trusted.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import gmpy2

from diophantine.formula.ast import (
    Formula,
    Named,
    binder_paths,
    close,
    cong,
    conj,
    disj,
    dvd,
    eq,
    exists_many,
    instantiate,
    le,
    lt,
)
from diophantine.formula.compiler import CompiledDioph, compile_formula
from diophantine.formula.search import SearchLimitExceeded, eval_bounded
from diophantine.formula.semantics import holds_with
from diophantine.pell import PellBase, enumerate_solutions, pell_pair, pell_pair_pow

PELL_PARAMS = ("a", "k", "x", "y")
PELL_BINDERS = ("u", "v", "s", "t", "b")
POW_PARAMS = ("x", "y", "w")
POW_BINDERS = ("W", "A", "T", "Z", "X", "Y", "D")


def to_decimal(n: int) -> str:
    """Decimal string without the interpreter's digit limit for ``str(int)``."""
    return gmpy2.mpz(n).digits(10)


def from_decimal(text: str) -> int:
    return int(gmpy2.mpz(text, 10))


class WitnessTooLarge(RuntimeError):
    """The smallest witness the construction can offer exceeds the size cap."""


def pell_equation(x, y, a) -> Formula:
    """``x*x - (a*a - 1)*y*y = 1``."""
    return eq(x * x + y * y, a * a * y * y + 1)


def pell_conjuncts() -> list[Formula]:
    """The ten conditions on ``u, v, s, t, b``, over named variables."""
    a, k, x, y = (Named(n) for n in PELL_PARAMS)
    u, v, s, t, b = (Named(n) for n in PELL_BINDERS)
    return [
        pell_equation(x, y, a),
        pell_equation(u, v, a),
        pell_equation(s, t, b),
        lt(1, b),
        cong(b, 1, 4 * y),
        cong(b, a, u),
        lt(0, v),
        dvd(y * y, v),
        cong(s, x, u),
        cong(t, k, 4 * y),
    ]


@lru_cache(maxsize=None)
def pell_xy_formula() -> Formula:
    """``k <= y and ((x = 1 and y = 0) or ∃ u v s t b, <ten conditions>)`` over ``(a, k, x, y)``."""
    a, k, x, y = (Named(n) for n in PELL_PARAMS)
    phi = exists_many(PELL_BINDERS, conj(*pell_conjuncts()))
    body = conj(le(k, y), disj(conj(eq(x, 1), eq(y, 0)), phi))
    return close(body, PELL_PARAMS)


@lru_cache(maxsize=None)
def pow_formula() -> Formula:
    """``w = x**y`` over ``(x, y, w)``, with ``0**0 = 1``.

    ``(y = 0 and w = 1) or (0 < y and ((x = 0 and w = 0) or (0 < x and ∃ ...)))``
    where the last case picks ``A = x_j(W + 1)`` with ``W | y_j(W + 1)``,
    ``W >= x, y`` (so ``A`` is large enough), ``X, Y = x_y(A), y_y(A)`` and
    reads ``w`` off ``X - (A - x)*Y ≡ x**y (mod 2*A*x - x*x - 1)``.
    """
    x, y, w = (Named(n) for n in POW_PARAMS)
    W, A, T, Z, X, Y, D = (Named(n) for n in POW_BINDERS)
    main = exists_many(
        POW_BINDERS,
        conj(
            lt(1, A),
            eq(A, x + D),
            eq(2 * A * x, T + x * x + 1),
            lt(w, T),
            le(x, W),
            le(y, W),
            eq(A * A, (W * W + 2 * W) * (W * Z) * (W * Z) + 1),
            cong(X, Y * D + w, T),
            instantiate(pell_xy_formula(), [A, y, X, Y]),
        ),
    )
    body = disj(
        conj(eq(y, 0), eq(w, 1)),
        conj(lt(0, y), disj(conj(eq(x, 0), eq(w, 0)), conj(lt(0, x), main))),
    )
    return close(body, POW_PARAMS)


@lru_cache(maxsize=None)
def pell_xy_polynomial() -> CompiledDioph:
    return compile_formula(pell_xy_formula(), 4)


@lru_cache(maxsize=None)
def pow_polynomial() -> CompiledDioph:
    return compile_formula(pow_formula(), 3)


# Pell-pair witnesses


@dataclass(frozen=True)
class PellWitness:
    u: int
    v: int
    s: int
    t: int
    b: int

    def values(self) -> dict[str, int]:
        return asdict(self)

    def max_entry(self) -> int:
        return max(self.u, self.v, self.s, self.t, self.b)


def check_pell_witness(a: int, k: int, x: int, y: int, w: PellWitness) -> list[str]:
    """Names of the conditions the witness violates (empty when valid).

    Plain integer arithmetic, deliberately independent of the formula AST.
    """
    u, v, s, t, b = w.u, w.v, w.s, w.t, w.b

    def congruent(p: int, q: int, m: int) -> bool:
        return p == q if m == 0 else (p - q) % m == 0

    checks = {
        "x^2-(a^2-1)y^2=1": x * x - (a * a - 1) * y * y == 1,
        "u^2-(a^2-1)v^2=1": u * u - (a * a - 1) * v * v == 1,
        "s^2-(b^2-1)t^2=1": s * s - (b * b - 1) * t * t == 1,
        "b>1": b > 1,
        "b≡1 (mod 4y)": congruent(b, 1, 4 * y),
        "b≡a (mod u)": congruent(b, a, u),
        "v>0": v > 0,
        "y^2|v": v == 0 if y == 0 else v % (y * y) == 0,
        "s≡x (mod u)": congruent(s, x, u),
        "t≡k (mod 4y)": congruent(t, k, 4 * y),
    }
    return [name for name, ok in checks.items() if not ok]


def _crt(r1: int, m1: int, r2: int, m2: int) -> int | None:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % l


def construct_pell_witness(a: int, k: int, max_bits: int | None = None) -> PellWitness:
    """A witness for ``(a, k, x_k(a), y_k(a))`` with ``k >= 1``.

    Tries ``(u, v) = (x_m(a), y_m(a))`` for ``m = k*y, 2*k*y, ...`` (these make
    ``y*y | v``) until ``u`` is coprime to ``4y``, takes the least ``b > 1``
    with ``b ≡ 1 (mod 4y)`` and ``b ≡ a (mod u)`` and ``(s, t) = (x_k(b), y_k(b))``.
    """
    if a <= 1 or k < 1:
        raise ValueError("needs a > 1 and k >= 1")
    y = pell_pair(a, k).y
    step = k * y
    bits_per_index = math.log2(2 * a)
    for j in range(1, 5):
        m = j * step
        if max_bits is not None and m * bits_per_index * (k + 1) > max_bits:
            raise WitnessTooLarge(
                f"witness for a={a}, k={k} needs Pell index {m} (about {int(m * bits_per_index)} bits)"
            )
        um = pell_pair_pow(a, m)
        u, v = um.x, um.y
        if v % (y * y) or math.gcd(u, 4 * y) != 1:
            continue
        b = _crt(1, 4 * y, a % u, u)
        if b is None:
            continue
        if b <= 1:
            b += 4 * y * u
        st = pell_pair_pow(b, k)
        return PellWitness(u, v, st.x, st.y, b)
    raise AssertionError(f"no witness among the first indices for a={a}, k={k}")


def search_pell_witness(a: int, k: int, x: int, y: int, bound: int) -> PellWitness | None:
    """Exhaustive search for a witness with every entry ``<= bound``.

    Complete for that box: ``v`` runs over the multiples of ``y*y``, ``u`` is
    the only candidate square root, ``b`` runs over the CRT class of
    ``1 (mod 4y)`` and ``a (mod u)``, ``t`` over ``k (mod 4y)`` and ``s`` is
    again a square root.  No Pell recurrence is used.
    """
    if x * x - (a * a - 1) * y * y != 1 or y == 0:
        return None
    d = a * a - 1
    yy = y * y
    four_y = 4 * y
    v = yy
    while v <= bound:
        u2 = d * v * v + 1
        if u2 > bound * bound:
            break
        u = math.isqrt(u2)
        if u * u == u2:
            found = _search_b(a, k, x, y, u, v, bound, four_y)
            if found is not None:
                return found
        v += yy
    return None


def _search_b(a, k, x, y, u, v, bound, four_y) -> PellWitness | None:
    r = _crt(1 % four_y, four_y, a % u, u)
    if r is None:
        return None
    step = four_y * u // math.gcd(four_y, u)
    b = r
    while b <= 1:
        b += step
    while b <= bound:
        e = b * b - 1
        t = k % four_y
        while True:
            s2 = e * t * t + 1
            if s2 > bound * bound:
                break
            s = math.isqrt(s2)
            if s * s == s2 and (s - x) % u == 0:
                return PellWitness(u, v, s, t, b)
            t += four_y
        b += step
    return None


def pell_witness_paths(w: PellWitness, prefix: tuple[int, ...] = ()) -> dict[tuple[int, ...], int]:
    paths = binder_paths(pell_xy_formula())
    return {prefix + paths[name]: value for name, value in w.values().items()}


def pell_formula_holds(a: int, k: int, x: int, y: int, w: PellWitness | None) -> bool:
    return holds_with(pell_xy_formula(), (a, k, x, y), pell_witness_paths(w) if w else {})


# verification of the Pell-pair formula


@dataclass
class ForwardCheck:
    a: int
    k: int
    x: int
    y: int
    status: str  # "pass", "fail" or "inconclusive"
    method: str = ""
    witness: PellWitness | None = None
    bound_used: int | None = None
    problems: list[str] = field(default_factory=list)


@dataclass
class BackwardCheck:
    a: int
    k: int
    x: int
    y: int
    holds: bool
    expected: bool
    status: str


@dataclass
class PellPairReport:
    a: int
    k_max: int
    witness_bound: int
    x_bound: int
    forward: list[ForwardCheck]
    backward: list[BackwardCheck]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.forward) and all(
            c.status == "pass" for c in self.backward
        )

    @property
    def inconclusive(self) -> bool:
        return any(c.status == "inconclusive" for c in self.forward)

    def to_json_obj(self) -> dict:
        def fwd(c: ForwardCheck) -> dict:
            return {
                "k": c.k,
                "x": to_decimal(c.x),
                "y": to_decimal(c.y),
                "status": c.status,
                "method": c.method,
                "bound_used": None if c.bound_used is None else to_decimal(c.bound_used),
                "witness": None
                if c.witness is None
                else {n: to_decimal(val) for n, val in c.witness.values().items()},
                "problems": c.problems,
            }

        return {
            "formula": "pell_xy",
            "a": self.a,
            "k_max": self.k_max,
            "witness_bound": str(self.witness_bound),
            "x_bound": str(self.x_bound),
            "ok": self.ok,
            "forward": [fwd(c) for c in self.forward],
            "backward": [
                {"k": c.k, "x": to_decimal(c.x), "y": to_decimal(c.y), "holds": c.holds, "status": c.status}
                for c in self.backward
            ],
        }


class WitnessCache:
    """JSON records ``{a, k, witness: {u, v, s, t, b}, bound_used}`` with decimal-string numbers."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else None
        self.records: dict[tuple[int, int], tuple[PellWitness, int]] = {}
        if self.path and self.path.exists():
            for rec in json.loads(self.path.read_text()):
                w = PellWitness(**{n: from_decimal(rec["witness"][n]) for n in PELL_BINDERS})
                self.records[(int(rec["a"]), int(rec["k"]))] = (w, from_decimal(rec["bound_used"]))

    def get(self, a: int, k: int):
        return self.records.get((a, k))

    def put(self, a: int, k: int, w: PellWitness, bound_used: int) -> None:
        self.records[(a, k)] = (w, bound_used)

    def dumps(self) -> str:
        out = []
        for (a, k), (w, bound_used) in sorted(self.records.items()):
            out.append(
                {
                    "a": a,
                    "k": k,
                    "witness": {n: to_decimal(val) for n, val in w.values().items()},
                    "bound_used": to_decimal(bound_used),
                }
            )
        return json.dumps(out, indent=1) + "\n"

    def save(self) -> None:
        if self.path:
            self.path.write_text(self.dumps())


def find_pell_witness(
    a: int,
    k: int,
    start: int = 16,
    exhaustive_limit: int = 10**6,
    max_bits: int = 1 << 16,
) -> tuple[PellWitness, int, str]:
    """Escalate ``B = start, 4*start, 16*start, ...`` until a witness within ``B`` turns up.

    While ``B <= exhaustive_limit`` each round is the exhaustive
    :func:`search_pell_witness`; past it the constructed witness is accepted
    at the first ``B`` that covers it.  Raises :class:`WitnessTooLarge` past
    ``2**max_bits``.
    """
    p = pell_pair(a, k)
    bound = start
    constructed = None
    while bound.bit_length() <= max_bits + 1:
        if bound <= exhaustive_limit:
            w = search_pell_witness(a, k, p.x, p.y, bound)
            if w is not None:
                return w, bound, "exhaustive"
        else:
            if constructed is None:
                constructed = construct_pell_witness(a, k, max_bits=max_bits)
            if constructed.max_entry() <= bound:
                return constructed, bound, "constructed"
        bound *= 4
    raise WitnessTooLarge(f"no witness for a={a}, k={k} below 2**{max_bits}")


def verify_pell_theorem3(
    a: int,
    k_max: int,
    witness_bound: int = 10**6,
    x_bound: int = 5000,
    cache: WitnessCache | None = None,
    max_bits: int = 1 << 16,
    check_polynomial: bool = True,
) -> PellPairReport:
    """Both directions of the Pell-pair characterisation at desk scale.

    Forward: for each ``k <= k_max`` the pair ``(x_k, y_k)`` satisfies the
    formula, with a witness found by escalating bounds (or read from
    ``cache``) and re-checked three ways.  Backward: for every natural Pell
    solution with ``x <= x_bound`` and every ``k <= k_max``, if a witness with
    entries ``<= witness_bound`` exists then ``(x, y) = (x_k, y_k)``.  Every
    ``k <= y`` is tried (larger ``k`` fail the ``k <= y`` conjunct outright),
    and the checks come out sorted by ``(x, k)``.
    """
    if a <= 1:
        raise ValueError(f"needs a > 1, got a={a}")
    f = pell_xy_formula()
    poly = pell_xy_polynomial() if check_polynomial else None
    forward = []
    for k in range(k_max + 1):
        p = pell_pair(a, k)
        if k == 0:
            ok = eval_bounded(f, (a, 0, 1, 0), 0)
            forward.append(
                ForwardCheck(a, 0, 1, 0, "pass" if ok else "fail", "trivial disjunct", None, 0)
            )
            continue
        cached = cache.get(a, k) if cache else None
        try:
            if cached is not None:
                w, bound_used = cached
                method = "cached"
            else:
                w, bound_used, method = find_pell_witness(a, k, max_bits=max_bits)
                if cache is not None:
                    cache.put(a, k, w, bound_used)
        except WitnessTooLarge:
            forward.append(ForwardCheck(a, k, p.x, p.y, "inconclusive", "cap"))
            continue
        problems = check_pell_witness(a, k, p.x, p.y, w)
        if w.max_entry() > bound_used:
            problems.append("witness exceeds recorded bound")
        if not pell_formula_holds(a, k, p.x, p.y, w):
            problems.append("formula evaluation")
        if poly is not None:
            t = poly.lift((a, k, p.x, p.y), pell_witness_paths(w))
            if t is None or poly.eval((a, k, p.x, p.y), t) != 0:
                problems.append("compiled polynomial")
        forward.append(
            ForwardCheck(a, k, p.x, p.y, "fail" if problems else "pass", method, w, bound_used, problems)
        )

    backward = []
    for x, y in enumerate_solutions(PellBase(a), x_bound):
        for k in range(y + 1):
            holds = (
                (x, y) == (1, 0) or search_pell_witness(a, k, x, y, witness_bound) is not None
            )
            p = pell_pair(a, k)
            expected = (x, y) == (p.x, p.y)
            status = "fail" if holds and not expected else "pass"
            backward.append(BackwardCheck(a, k, x, y, holds, expected, status))
    return PellPairReport(a, k_max, witness_bound, x_bound, forward, backward)


# power function


def pow_witness_values(x: int, y: int, max_bits: int | None = None) -> dict[str, int]:
    """Binder values (by name) for ``(x, y, x**y)``; empty for the ``y = 0`` and ``x = 0`` cases."""
    if y == 0 or x == 0:
        return {}
    W = max(x, y)
    pa = pell_pair(W + 1, W)
    A, Z = pa.x, pa.y // W
    T = 2 * A * x - x * x - 1
    D = A - x
    XY = pell_pair_pow(A, y)
    values = {"W": W, "A": A, "T": T, "Z": Z, "X": XY.x, "Y": XY.y, "D": D}
    inner = construct_pell_witness(A, y, max_bits=max_bits)
    values.update(inner.values())
    return values


def pow_witness_paths(x: int, y: int, max_bits: int | None = None) -> dict[tuple[int, ...], int]:
    paths = binder_paths(pow_formula())
    return {paths[n]: val for n, val in pow_witness_values(x, y, max_bits).items()}


@dataclass
class PowCheck:
    x: int
    y: int
    w: int
    expected: bool
    status: str  # "pass", "fail", "inconclusive"
    detail: str = ""
    bound_used: int | None = None


POW_MAX_BITS = 1 << 20


def eval_big(cd: CompiledDioph, v, t) -> int:
    """``cd.eval`` on GMP integers; witnesses here run to hundreds of thousands of bits."""
    return int(cd.poly.eval([gmpy2.mpz(n) for n in (*v, *t)]))


def pow_positive_check(x: int, y: int, max_bits: int = POW_MAX_BITS) -> PowCheck:
    """Membership of ``(x, y, x**y)`` in the compiled power polynomial via a constructed witness."""
    w = x**y
    try:
        witness = pow_witness_paths(x, y, max_bits)
    except WitnessTooLarge as exc:
        return PowCheck(x, y, w, True, "inconclusive", str(exc))
    cd = pow_polynomial()
    t = cd.lift((x, y, w), witness)
    if t is None:
        return PowCheck(x, y, w, True, "fail", "constructed witness does not satisfy the formula")
    if eval_big(cd, (x, y, w), t) != 0:
        return PowCheck(x, y, w, True, "fail", "polynomial is nonzero at the lifted witness")
    return PowCheck(x, y, w, True, "pass", "membership witness", max(t, default=0))


def pow_negative_check(x: int, y: int, w: int, bound: int, node_limit: int | None = None) -> PowCheck:
    """``eval_bounded`` of the power formula at ``(x, y, w)``; passes when false."""
    try:
        holds = eval_bounded(pow_formula(), (x, y, w), bound, node_limit=node_limit)
    except SearchLimitExceeded as exc:
        return PowCheck(x, y, w, x**y == w, "inconclusive", str(exc), bound)
    status = "pass" if holds == (x**y == w) else "fail"
    return PowCheck(x, y, w, x**y == w, status, f"eval_bounded at B={bound}", bound)


def verify_pow(
    x_max: int,
    y_max: int,
    bound: int = 40,
    w_max: int = 100,
    max_bits: int = POW_MAX_BITS,
    node_limit: int | None = 200_000,
) -> list[PowCheck]:
    """Every ``(x, y, x**y)`` plus every ``(x, y, w)`` with ``w != x**y``, ``w <= w_max``; sorted."""
    checks = []
    for x in range(x_max + 1):
        for y in range(y_max + 1):
            checks.append(pow_positive_check(x, y, max_bits))
            checks.extend(
                pow_negative_check(x, y, w, bound, node_limit) for w in range(w_max + 1) if w != x**y
            )
    checks.sort(key=lambda c: (c.x, c.y, c.w))
    return checks
