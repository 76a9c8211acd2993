import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diophantine.poly import ArityError, Poly, constant, degree, evaluate, p_add, p_mul, p_neg, p_sub, remap, var

N = 3


def x(i, n=N):
    return var(i, n)


@st.composite
def polys(draw, n=N):
    mons = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, 3)] * n), st.integers(-50, 50), max_size=6
        )
    )
    return Poly(n, mons)


points = st.tuples(*[st.integers(-6, 6)] * N)


def naive_eval(p, v):
    total = 0
    for coef, exps in p.monomials():
        term = coef
        for vi, k in zip(v, exps):
            term *= vi**k
        total += term
    return total


def test_eval_examples():
    p = x(0, 2) ** 2 - 3 * x(1, 2) ** 2 - 1
    assert evaluate(p, [7, 4]) == 0
    assert Poly.zero(4).eval([1, 2, 3, 4]) == 0
    assert (x(0, 2) * x(1, 2)).eval([0, 99]) == 0


def test_eval_arity_checked():
    with pytest.raises(ArityError):
        x(0, 2).eval([1])


def test_ring_op_examples():
    assert p_add(x(0), p_neg(x(0))).is_zero()
    assert p_add(x(0), p_neg(x(0))).monomials() == []
    assert p_mul(x(0) + 1, x(0) - 1) == x(0) ** 2 - 1
    assert p_sub(x(0) ** 2, x(0) ** 2) == Poly.zero(N)


def test_arity_mismatch_rejected():
    with pytest.raises(ArityError):
        p_add(x(0, 2), x(0, 3))
    with pytest.raises(ArityError):
        p_mul(x(0, 2), x(0, 3))


def test_remap_examples():
    p = x(0, 2) * x(1, 2)
    assert remap(p, [0, 1], 2) == p
    assert remap(p, {0: 1, 1: 0}, 2) == p
    assert remap(x(0, 1), {0: 2}, 3) == var(2, 3)


def test_remap_rejects_non_injective():
    with pytest.raises(ValueError):
        remap(x(0, 2) + x(1, 2), [0, 0], 2)


def test_degree_constant_var():
    assert degree(x(0) ** 2 - 1) == 2
    assert constant(5, 2).eval([3, 9]) == 5
    assert constant(0, 2).is_zero()
    assert var(1, 3).eval([9, 8, 7]) == 8
    with pytest.raises(ArityError):
        var(3, 3)


def test_monomials_in_lex_order():
    p = x(2) + x(0) ** 2 + 7 + x(1) * x(2)
    exps = [e for _, e in p.monomials()]
    assert exps == sorted(exps)


def test_json_format():
    p = x(0, 2) ** 2 - 3 * x(1, 2) ** 2 - 1
    obj = json.loads(p.to_json())
    assert obj == {
        "num_vars": 2,
        "monomials": [
            {"coef": "-1", "exps": [0, 0]},
            {"coef": "-3", "exps": [0, 2]},
            {"coef": "1", "exps": [2, 0]},
        ],
    }
    assert Poly.from_json(p.to_json()) == p


def test_json_rejects_duplicates():
    bad = {"num_vars": 1, "monomials": [{"coef": "1", "exps": [1]}, {"coef": "2", "exps": [1]}]}
    with pytest.raises(ValueError):
        Poly.from_json_obj(bad)


def test_big_coefficients_survive_json():
    p = constant(-(10**60) - 7, 1) * x(0, 1)
    assert Poly.from_json(p.to_json()) == p
    assert '"-1000000000000000000000000000000000000000000000000000000000007"' in p.to_json()


@given(polys(), polys(), polys(), points)
def test_ring_laws_pointwise(p, q, r, v):
    assert ((p * q) * r).eval(v) == (p * (q * r)).eval(v)
    assert (p * (q + r)).eval(v) == (p * q + p * r).eval(v)
    assert (p + q).eval(v) == p.eval(v) + q.eval(v)
    assert (p * q).eval(v) == p.eval(v) * q.eval(v)
    assert (p - q).eval(v) == p.eval(v) - q.eval(v)


@given(polys(), points)
def test_eval_matches_naive(p, v):
    assert p.eval(v) == naive_eval(p, v) == p.evaluator()(v)


@given(polys(), points)
def test_substitute_prefix(p, v):
    assert p.substitute_prefix(v[:2]).eval(v[2:]) == p.eval(v)


@given(polys())
def test_canonical_form(p):
    assert all(c != 0 for c, _ in p.monomials())
    assert Poly(p.num_vars, dict(p.terms)) == p
    assert Poly.from_json(p.to_json()) == p


@given(polys(n=2), polys(n=2))
def test_structural_equality_is_semantic_equality(p, q):
    # degrees are at most 3 per variable, so a 4 x 4 grid determines the polynomial
    same_values = all(p.eval(v) == q.eval(v) for v in itertools.product(range(4), repeat=2))
    assert same_values == (p == q)


perms = st.permutations(list(range(4)))


@given(polys(), perms, perms)
def test_remap_composition(p, f, g):
    f3 = f[:N]
    composed = [g[f3[i]] for i in range(N)]
    assert remap(remap(p, f3, 4), g, 4) == remap(p, composed, 4)


@given(polys(), perms, st.tuples(*[st.integers(-5, 5)] * 4))
def test_remap_semantics(p, f, v):
    f3 = f[:N]
    assert remap(p, f3, 4).eval(v) == p.eval([v[f3[i]] for i in range(N)])
