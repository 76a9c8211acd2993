import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diophantine.zsqrtd import (
    QuadInt,
    RadicandMismatch,
    add,
    conj,
    format_quadint,
    is_square,
    le,
    lt,
    mul,
    nonneg,
    nonnegg,
    norm,
    parse_quadint,
    power,
    sq_le,
)

NON_SQUARE = [2, 3, 5, 6, 7, 8, 10]
SQUARE = [1, 4, 9]

ints = st.integers(-10**6, 10**6)


def q(d, re, im):
    return QuadInt(d, re, im)


@st.composite
def quads(draw, d=None):
    d = draw(st.sampled_from(NON_SQUARE + SQUARE)) if d is None else d
    return QuadInt(d, draw(ints), draw(ints))


@st.composite
def triples(draw):
    d = draw(st.sampled_from(NON_SQUARE + SQUARE + [0]))
    return tuple(QuadInt(d, draw(ints), draw(ints)) for _ in range(3))


def sign_oracle(d, re, im):
    """Sign of re + im*sqrt(d) from integer comparisons only."""
    if re >= 0 and im >= 0:
        return True
    if im < 0 and re >= 0:
        return re * re >= d * im * im
    if re < 0 and im >= 0:
        return d * im * im >= re * re
    return False


def test_add_examples():
    assert add(q(3, 1, 2), q(3, 4, 5)) == q(3, 5, 7)
    z = q(3, 2, 1)
    assert add(z, QuadInt.zero(3)) == z
    assert add(z, q(3, -2, -1)) == QuadInt.zero(3)


def test_mul_examples():
    assert mul(q(3, 2, 1), q(3, 2, 1)) == q(3, 7, 4)
    assert mul(q(3, 5, -2), QuadInt.one(3)) == q(3, 5, -2)
    assert mul(q(2, 0, 1), q(2, 0, 1)) == q(2, 2, 0)


def test_conj_examples():
    assert conj(q(3, 2, 1)) == q(3, 2, -1)
    z, w = q(3, 2, 1), q(3, 7, 4)
    assert conj(mul(z, w)) == mul(conj(z), conj(w))
    assert conj(q(5, 9, 0)) == q(5, 9, 0)


def test_norm_examples():
    assert norm(q(3, 2, 1)) == 1
    assert norm(QuadInt.one(7)) == 1
    assert norm(q(3, 7, 4)) == 1


def test_sq_le_examples():
    assert sq_le(1, 2, 1, 3)
    assert all(sq_le(0, c, b, d) for c, b, d in itertools.product(range(4), repeat=3))
    assert not sq_le(2, 3, 1, 3)


def test_nonnegg_examples():
    assert nonnegg(3, 1, 3, -1)
    assert nonnegg(2, 3, 5, 7)
    assert not nonnegg(2, 3, -1, -1)


def test_nonnegg_clauses_match_real_sign():
    # with the literal clause order, nonnegg(c, d, a, b) decides a*sqrt(d) + b*sqrt(c) >= 0
    for c, d in itertools.product(range(6), repeat=2):
        for a, b in itertools.product(range(-6, 7), repeat=2):
            lhs, rhs = a * a * d, b * b * c
            expected = (a >= 0 and b >= 0) or (a >= 0 and lhs >= rhs) or (b >= 0 and rhs >= lhs)
            assert nonnegg(c, d, a, b) == expected, (c, d, a, b)


def test_nonneg_examples():
    assert nonneg(q(3, -1, 1))
    assert nonneg(q(3, 2, -1))
    assert not nonneg(q(3, 1, -1))


def test_le_examples():
    assert le(QuadInt.one(3), q(3, 2, 1))
    z = q(3, -4, 9)
    assert le(z, z)
    a, b = q(4, 2, 0), q(4, 0, 1)
    assert le(a, b) and le(b, a) and a != b


def test_pow_examples():
    z = q(3, 2, 1)
    assert power(z, 2) == q(3, 7, 4) == mul(z, z)
    assert power(z, 0) == QuadInt.one(3)
    assert power(z, 1) == z
    assert z**5 == mul(z, mul(z, mul(z, mul(z, z))))


def test_radicand_mismatch_rejected():
    with pytest.raises(RadicandMismatch):
        add(q(2, 1, 1), q(3, 1, 1))
    with pytest.raises(RadicandMismatch):
        le(q(2, 1, 1), q(3, 1, 1))


def test_lt_is_strict_part_of_le():
    for d in (2, 4):
        for a, b, c, e in itertools.product(range(-2, 3), repeat=4):
            z, w = q(d, a, b), q(d, c, e)
            assert lt(z, w) == (le(z, w) and not le(w, z))


@pytest.mark.parametrize("text,value", [("7+4√3", q(3, 7, 4)), ("-2-1√5", q(5, -2, -1)), ("0+0√2", q(2, 0, 0))])
def test_render_and_parse(text, value):
    assert format_quadint(value) == text
    assert parse_quadint(text) == value


def test_parse_accepts_sqrt_spelling():
    assert parse_quadint("7+4sqrt3") == q(3, 7, 4)


@pytest.mark.parametrize("bad", ["", "7+4", "7+4√-3", "a+b√3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_quadint(bad)


@given(quads())
def test_render_round_trip(z):
    assert parse_quadint(format_quadint(z)) == z


@given(triples())
def test_ring_axioms(t):
    x, y, z = t
    d = x.d
    zero, one = QuadInt.zero(d), QuadInt.one(d)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + zero == x and x * one == x
    assert x + (-x) == zero


@given(triples())
def test_norm_is_multiplicative(t):
    x, y, _ = t
    assert norm(x * y) == norm(x) * norm(y)
    assert x * conj(x) == QuadInt(x.d, norm(x), 0)


@given(st.sampled_from(NON_SQUARE), ints, ints)
def test_nonneg_matches_sign_oracle(d, re, im):
    assert nonneg(QuadInt(d, re, im)) == sign_oracle(d, re, im)


@given(st.sampled_from(NON_SQUARE), st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_nonneg_matches_high_precision_sign(d, re, im):
    # irrational value is never zero, so a crude float-free comparison suffices
    value_sign = re * re - d * im * im
    if re >= 0 and im >= 0:
        expected = True
    elif re < 0 and im < 0:
        expected = False
    else:
        expected = (value_sign > 0) == (re > 0)
    assert nonneg(QuadInt(d, re, im)) == expected


@given(quads(), quads())
def test_le_total(z, w):
    w = QuadInt(z.d, w.re, w.im)
    assert le(z, w) or le(w, z)


def test_is_square():
    assert [n for n in range(30) if is_square(n)] == [0, 1, 4, 9, 16, 25]
    assert all(not is_square(n) for n in NON_SQUARE)


def test_archimedean_on_grid():
    for d in NON_SQUARE:
        for re, im in itertools.product(range(-10, 11), repeat=2):
            z = q(d, re, im)
            if nonneg(z):
                n_max = 10 * (abs(re) + abs(im) + 1)
                assert any(le(z, q(d, n, 0)) for n in range(n_max + 1))


def test_float_sanity_of_order():
    # loose cross-check against floating point away from ties
    for d in (2, 3, 7):
        for re, im in itertools.product(range(-10, 11), repeat=2):
            v = re + im * math.sqrt(d)
            if abs(v) > 1e-9:
                assert nonneg(q(d, re, im)) == (v > 0)
