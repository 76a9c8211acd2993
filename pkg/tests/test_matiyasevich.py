import hashlib
import itertools

import pytest

from diophantine.formula import eval_bounded, eval_bounded_naive, show
from diophantine.formula.ast import binder_paths
from diophantine.matiyasevich import (
    PELL_BINDERS,
    PELL_PARAMS,
    POW_PARAMS,
    PellWitness,
    WitnessCache,
    WitnessTooLarge,
    check_pell_witness,
    construct_pell_witness,
    find_pell_witness,
    pell_formula_holds,
    pell_xy_formula,
    pell_xy_polynomial,
    pow_formula,
    pow_negative_check,
    pow_polynomial,
    pow_positive_check,
    pow_witness_paths,
    search_pell_witness,
    verify_pell_theorem3,
)
from diophantine.pell import pell_pair


def brute_pell_witnesses(a, k, x, y, bound):
    """Every witness with entries <= bound, by plain nested loops."""
    out = []
    for u, v, s, t, b in itertools.product(range(bound + 1), repeat=5):
        if not check_pell_witness(a, k, x, y, PellWitness(u, v, s, t, b)):
            out.append((u, v, s, t, b))
    return out


# the formula itself


def test_transcription_matches_golden(golden_dir):
    assert show(pell_xy_formula(), PELL_PARAMS) + "\n" == (golden_dir / "pell_xy_formula.txt").read_text()
    assert show(pow_formula(), POW_PARAMS) + "\n" == (golden_dir / "pow_formula.txt").read_text()


def test_shape():
    assert list(binder_paths(pell_xy_formula())) == list(PELL_BINDERS)
    cd = pell_xy_polynomial()
    assert cd.params == 4


def test_trivial_disjunct():
    for b in (0, 1, 5):
        assert eval_bounded(pell_xy_formula(), (2, 0, 1, 0), b)


def test_first_pair_needs_bound_nine():
    f = pell_xy_formula()
    assert eval_bounded(f, (2, 1, 2, 1), 9)
    assert not eval_bounded(f, (2, 1, 2, 1), 8)


def test_wrong_pair_is_rejected():
    f = pell_xy_formula()
    for b in (10, 100, 1000, 10**6):
        assert not eval_bounded(f, (2, 1, 7, 4), b)
    assert search_pell_witness(2, 1, 7, 4, 10**6) is None


def test_a_greater_than_one_is_not_in_the_formula():
    # with a = 1 the formula is meaningless but still evaluable
    assert eval_bounded(pell_xy_formula(), (1, 0, 1, 0), 0)
    with pytest.raises(ValueError):
        verify_pell_theorem3(1, 1)


@pytest.mark.parametrize("a,k,x,y", [(2, 1, 2, 1), (3, 1, 3, 1), (2, 1, 7, 4), (2, 0, 1, 0), (4, 1, 4, 1), (2, 2, 7, 4)])
def test_structured_search_matches_brute_force(a, k, x, y):
    bound = 9
    brute = brute_pell_witnesses(a, k, x, y, bound)
    found = search_pell_witness(a, k, x, y, bound)
    assert (found is not None) == bool(brute)
    if found:
        assert not check_pell_witness(a, k, x, y, found)


@pytest.mark.parametrize("a,k,x,y", [(2, 1, 2, 1), (3, 1, 3, 1), (2, 1, 7, 4), (2, 1, 1, 0), (3, 0, 3, 1)])
def test_generic_engine_matches_naive(a, k, x, y):
    f = pell_xy_formula()
    assert eval_bounded(f, (a, k, x, y), 4) == eval_bounded_naive(f, (a, k, x, y), 4)


def test_witness_checker_is_independent():
    w = PellWitness(7, 4, 9, 1, 9)
    assert check_pell_witness(2, 1, 2, 1, w) == []
    assert check_pell_witness(2, 1, 2, 1, PellWitness(7, 4, 9, 1, 5)) != []
    assert pell_formula_holds(2, 1, 2, 1, w)
    assert not pell_formula_holds(2, 1, 2, 1, PellWitness(7, 4, 9, 1, 5))


@pytest.mark.parametrize("a", [2, 3, 4, 7])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_constructed_witnesses_are_valid(a, k):
    p = pell_pair(a, k)
    w = construct_pell_witness(a, k)
    assert check_pell_witness(a, k, p.x, p.y, w) == []
    assert pell_formula_holds(a, k, p.x, p.y, w)


def test_constructed_witness_example():
    assert construct_pell_witness(2, 1) == PellWitness(7, 4, 9, 1, 9)


def test_size_cap():
    with pytest.raises(WitnessTooLarge):
        construct_pell_witness(2, 5, max_bits=64)


def test_escalation_records_bound():
    w, bound, method = find_pell_witness(2, 1)
    assert (w, bound, method) == (PellWitness(7, 4, 9, 1, 9), 16, "exhaustive")
    w, bound, method = find_pell_witness(2, 2)
    assert w.max_entry() <= bound < 4 * max(w.max_entry(), 4)


def test_compiled_polynomial_accepts_witness():
    cd = pell_xy_polynomial()
    from diophantine.matiyasevich import pell_witness_paths

    for a, k in [(2, 1), (2, 2), (3, 2)]:
        p = pell_pair(a, k)
        w = construct_pell_witness(a, k)
        t = cd.lift((a, k, p.x, p.y), pell_witness_paths(w))
        assert cd.eval((a, k, p.x, p.y), t) == 0
        # perturbing a parameter breaks it
        assert cd.eval((a, k, p.x + 1, p.y), t) != 0


# verification


def test_verify_small_cases():
    r = verify_pell_theorem3(2, 0, witness_bound=1)
    assert r.ok and r.forward[0].method == "trivial disjunct"
    r = verify_pell_theorem3(3, 2)
    assert r.ok and [c.status for c in r.forward] == ["pass"] * 3


def test_verify_report_is_sorted_and_serialisable():
    r = verify_pell_theorem3(2, 3, x_bound=100)
    keys = [(c.x, c.k) for c in r.backward]
    assert keys == sorted(keys)
    obj = r.to_json_obj()
    assert obj["ok"] is True
    assert all(isinstance(c["x"], str) for c in obj["backward"])


def test_witness_cache_matches_fresh_search(data_dir, tmp_path):
    cache = WitnessCache(data_dir / "pell_pair_witnesses.json")
    assert len(cache.records) >= 8
    for (a, k), (w, bound) in cache.records.items():
        p = pell_pair(a, k)
        assert check_pell_witness(a, k, p.x, p.y, w) == []
        assert w.max_entry() <= bound
        assert find_pell_witness(a, k) == (w, bound, "exhaustive" if bound <= 10**6 else "constructed")
    copy = tmp_path / "w.json"
    copy.write_text(cache.dumps())
    assert WitnessCache(copy).records == cache.records


# power function


def test_pow_polynomial_shape(data_dir):
    cd = pow_polynomial()
    assert cd.params == 3
    assert cd.poly.num_vars == 3 + cd.dummies
    text = cd.to_json() + "\n"
    assert text == (data_dir / "pow_polynomial.json").read_text()
    digest = (data_dir / "pow_polynomial.sha256").read_text().split()[0]
    assert hashlib.sha256(text.encode()).hexdigest() == digest


@pytest.mark.parametrize("x,y", [(0, 0), (2, 0), (0, 3), (1, 1), (2, 1), (5, 1), (2, 2), (3, 2)])
def test_pow_membership(x, y):
    assert pow_positive_check(x, y).status == "pass"


def test_zero_to_the_zero_is_one():
    f = pow_formula()
    assert eval_bounded(f, (0, 0, 1), 0)
    assert not eval_bounded(f, (0, 0, 0), 10)
    assert eval_bounded(f, (0, 2, 0), 0)
    assert eval_bounded(f, (2, 0, 1), 0)


@pytest.mark.parametrize("x,w", [(1, 1), (2, 2), (3, 3)])
def test_pow_formula_search_finds_small_witnesses(x, w):
    f = pow_formula()
    paths = pow_witness_paths(x, 1)
    assert eval_bounded(f, (x, 1, w), max(paths.values()))


@pytest.mark.parametrize("x,y,w", [(2, 3, 9), (2, 1, 3), (1, 3, 2), (3, 2, 8), (0, 0, 0), (2, 2, 5)])
def test_pow_negatives(x, y, w):
    assert pow_negative_check(x, y, w, 40).status == "pass"


def test_pow_lifted_witness_rejects_wrong_value():
    cd = pow_polynomial()
    t = cd.lift((2, 2, 4), pow_witness_paths(2, 2))
    assert cd.eval((2, 2, 4), t) == 0
    assert cd.eval((2, 2, 5), t) != 0


def test_pow_large_instance_is_inconclusive():
    c = pow_positive_check(2, 3, max_bits=1 << 16)
    assert c.status == "inconclusive"
    assert "bits" in c.detail
