import math
import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diophantine.pell import (
    PellBase,
    enumerate_solutions,
    is_pell_solution,
    pell_pair,
    pell_pair_pow,
    solution_index,
    xn,
    yn,
    zn_embed,
)
from diophantine.zsqrtd import QuadInt, conj, is_square, power


def brute_solutions(a, x_bound):
    # independent of both the recurrence and the scan: loop over y
    d = a * a - 1
    out = []
    y = 0
    while d * y * y + 1 <= x_bound * x_bound:
        x2 = d * y * y + 1
        x = math.isqrt(x2)
        if x * x == x2 and x <= x_bound:
            out.append((x, y))
        y += 1
    return out


def test_pell_pair_examples():
    assert (pell_pair(2, 0).x, pell_pair(2, 0).y) == (1, 0)
    assert (pell_pair(2, 2).x, pell_pair(2, 2).y) == (7, 4)
    assert (pell_pair(3, 2).x, pell_pair(3, 2).y) == (17, 6)
    assert pell_pair(PellBase(2), 2).n == 2


@pytest.mark.parametrize("a", [0, 1])
def test_base_rejects_small_a(a):
    with pytest.raises(ValueError):
        PellBase(a)
    with pytest.raises(ValueError):
        pell_pair(a, 1)


def test_base_radicand_is_not_square():
    for a in range(2, 200):
        assert PellBase(a).d == a * a - 1
        assert not is_square(a * a - 1)


def test_is_pell_solution_examples():
    assert is_pell_solution(2, 7, 4)
    assert is_pell_solution(2, 1, 0)
    assert not is_pell_solution(2, 3, 2)


def test_zn_embed_examples():
    assert zn_embed(2, 2) == QuadInt(3, 7, 4) == power(QuadInt(3, 2, 1), 2)
    assert zn_embed(2, 0) == QuadInt.one(3)
    assert zn_embed(3, 3) == power(QuadInt(8, 3, 1), 3)


def test_enumerate_examples():
    assert enumerate_solutions(2, 10) == [(1, 0), (2, 1), (7, 4)]
    assert enumerate_solutions(2, 1) == [(1, 0)]
    assert enumerate_solutions(3, 20) == [(1, 0), (3, 1), (17, 6)]
    assert enumerate_solutions(2, 0) == []


def test_solution_index_examples():
    assert solution_index(2, 7, 4) == 2
    assert solution_index(2, 1, 0) == 0
    assert solution_index(2, 5, 2) is None


@pytest.mark.parametrize("a", range(2, 7))
def test_enumeration_matches_brute_force(a):
    assert enumerate_solutions(a, 20000) == brute_solutions(a, 20000)


@pytest.mark.parametrize("a", range(2, 7))
def test_every_enumerated_solution_has_an_index(a):
    for x, y in enumerate_solutions(a, 10**5):
        n = solution_index(a, x, y)
        assert n is not None
        assert (pell_pair(a, n).x, pell_pair(a, n).y) == (x, y)


def test_strict_growth():
    for a in range(2, 7):
        pairs = [pell_pair(a, n) for n in range(26)]
        for p, q in zip(pairs, pairs[1:]):
            assert q.x > p.x and q.y > p.y


def test_conjugate_is_inverse():
    for a in range(2, 7):
        for n in range(26):
            z = zn_embed(a, n)
            assert z * conj(z) == QuadInt.one(a * a - 1)


@given(st.integers(2, 50), st.integers(0, 300))
def test_fast_power_matches_recurrence(a, n):
    assert pell_pair_pow(a, n) == pell_pair(a, n)
    assert (xn(a, n), yn(a, n)) == (pell_pair(a, n).x, pell_pair(a, n).y)


@given(st.integers(2, 30), st.integers(0, 60), st.integers(0, 60))
def test_addition_law(a, m, n):
    # z_{m+n} = z_m * z_n
    assert zn_embed(a, m + n) == zn_embed(a, m) * zn_embed(a, n)


@given(st.integers(2, 30), st.integers(0, 10**4), st.integers(0, 10**4))
def test_is_pell_solution_matches_definition(a, x, y):
    assert is_pell_solution(a, x, y) == (x * x - (a * a - 1) * y * y == 1)


def test_memo_is_consistent_under_threads():
    results = []

    def work(n):
        results.append((n, pell_pair(17, n).x))

    threads = [threading.Thread(target=work, args=(n,)) for n in range(400, 0, -7)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for n, x in results:
        assert x == pell_pair_pow(17, n).x
