"""Seeded random formulas for property tests and the compiler sweep."""

from __future__ import annotations

import itertools
import random
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
from diophantine.formula.compiler import compile_formula, witness_hint
from diophantine.formula.search import eval_bounded
from diophantine.formula.semantics import eval_bounded_naive


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 20240611
    size: int = 240
    max_depth: int = 4
    max_params: int = 3
    entry_bound: int = 8
    # formulas whose dummy box at v = (entry_bound, ...) and B = entry_bound
    # exceeds this many points are skipped, so that exhaustive scans stay cheap
    max_box: int = 10_000


def random_term(rng: random.Random, scope: int, size: int = 2) -> Term:
    if size <= 0 or rng.random() < 0.4:
        if scope and rng.random() < 0.7:
            return Var(rng.randrange(scope))
        return Const(rng.randrange(4))
    op = Add if rng.random() < 0.6 else Mul
    return op(random_term(rng, scope, size - 1), random_term(rng, scope, size - 1))


_ATOM_WEIGHTS = {Eq: 3, Le: 1, Lt: 1, Ne: 1, Dvd: 1, ModCong: 1}


def random_atom(rng: random.Random, scope: int) -> Formula:
    kind = rng.choices(list(_ATOM_WEIGHTS), weights=list(_ATOM_WEIGHTS.values()))[0]
    a, b = random_term(rng, scope), random_term(rng, scope)
    if kind is ModCong:
        return ModCong(a, b, random_term(rng, scope, 1))
    return kind(a, b)


def random_formula(rng: random.Random, scope: int, target_depth: int) -> Formula:
    """A formula of depth exactly ``target_depth`` over ``scope`` free indices."""
    if target_depth <= 1:
        return random_atom(rng, scope)
    r = rng.random()
    if r < 0.3:
        return Exists(random_formula(rng, scope + 1, target_depth - 1))
    deep = random_formula(rng, scope, target_depth - 1)
    other = random_formula(rng, scope, rng.randint(1, target_depth - 1))
    left, right = (deep, other) if rng.random() < 0.5 else (other, deep)
    return And(left, right) if r < 0.65 else Or(left, right)


def box_size(bounds: list[int]) -> int:
    n = 1
    for b in bounds:
        n *= b + 1
    return n


def corpus(cfg: CorpusConfig = CorpusConfig()) -> tuple[list[tuple[Formula, int]], int]:
    """``(formulas with their parameter counts, number skipped for box size)``."""
    rng = random.Random(cfg.seed)
    out, skipped = [], 0
    while len(out) < cfg.size:
        k = rng.randint(1, cfg.max_params)
        f = random_formula(rng, k, rng.randint(1, cfg.max_depth))
        if box_size(witness_hint(f, [cfg.entry_bound] * k, cfg.entry_bound)) > cfg.max_box:
            skipped += 1
            continue
        out.append((f, k))
    return out, skipped


def parameter_vectors(k: int, entry_bound: int, rng: random.Random, sample: int = 60) -> list[tuple[int, ...]]:
    """All vectors when there are at most ``sample`` of them, otherwise the two corners plus a sample."""
    if (entry_bound + 1) ** k <= 2 * sample:
        return list(itertools.product(range(entry_bound + 1), repeat=k))
    vs = {(0,) * k, (entry_bound,) * k}
    while len(vs) < sample:
        vs.add(tuple(rng.randint(0, entry_bound) for _ in range(k)))
    return sorted(vs)


@dataclass
class Disagreement:
    formula: Formula
    v: tuple[int, ...]
    kind: str
    t: tuple[int, ...] | None = None


def check_agreement(f: Formula, k: int, vs, bound: int) -> list[Disagreement]:
    """Soundness and bounded completeness of ``compile_formula(f, k)`` at each ``v``.

    Every zero ``t`` inside the hint box must make ``f`` true with witnesses at
    most ``max(t)``; if ``f`` is true with witnesses at most ``bound`` the box
    must contain a zero; and the search engine must agree with naive
    enumeration.
    """
    cd = compile_formula(f, k)
    bad = []
    for v in vs:
        truth = {}

        def holds(b: int) -> bool:
            if b not in truth:
                truth[b] = eval_bounded(f, v, b)
            return truth[b]

        naive = eval_bounded_naive(f, v, bound)
        if naive != holds(bound):
            bad.append(Disagreement(f, v, "engine vs naive"))
        hint = cd.witness_hint(v, bound)
        ev = cd.poly.substitute_prefix(list(v)).evaluator()
        found = False
        for t in itertools.product(*(range(h + 1) for h in hint)):
            if ev(t) == 0:
                found = True
                if not holds(max(t, default=0)):
                    bad.append(Disagreement(f, v, "unsound zero", t))
                    break
        if naive and not found:
            bad.append(Disagreement(f, v, "incomplete"))
    return bad
