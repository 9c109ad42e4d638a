from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dompoly.polynomial import (NegativeCoefficientError, _mul_kronecker, _mul_schoolbook,
                                binomial_row, degree, evaluate, is_log_concave, is_unimodal,
                                mode_chain_feasible, poly, poly_add, poly_mul, poly_pow,
                                poly_shift, poly_sub, support, unimodality_report)

import oracles

coeff_lists = st.lists(st.integers(0, 10 ** 30), min_size=1, max_size=60)


def test_trim_and_degree():
    assert poly([1, 2, 0, 0]) == (1, 2)
    assert degree((0, 0, 1)) == 2
    assert poly([0, 0]) == (0,)


def test_sub_rejects_negative():
    assert poly_sub((3, 2, 1), (1, 2)) == (2, 0, 1)
    with pytest.raises(NegativeCoefficientError):
        poly_sub((1,), (2,))


def test_shift_and_binomial_row():
    assert poly_shift((1, 1), 2) == (0, 0, 1, 1)
    assert binomial_row(4) == (1, 4, 6, 4, 1)
    assert binomial_row(2, shift=1) == (0, 1, 2, 1)


def test_pow_matches_repeated_mul():
    base = (0, 2, 1)
    acc = (1,)
    for k in range(6):
        assert poly_pow(base, k) == acc
        acc = poly_mul(acc, base)


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_kronecker_matches_schoolbook(a, b):
    assert _mul_kronecker(a, b)[:len(a) + len(b) - 1] == _mul_schoolbook(a, b)[:len(a) + len(b) - 1]
    assert list(poly_mul(tuple(a), tuple(b))) == list(oracles.trim(oracles.poly_mul(a, b)))


@given(coeff_lists, coeff_lists)
@settings(max_examples=40, deadline=None)
def test_add_commutes_and_evaluates(a, b):
    s = poly_add(tuple(a), tuple(b))
    assert s == poly_add(tuple(b), tuple(a))
    assert evaluate(s, 3) == evaluate(tuple(a), 3) + evaluate(tuple(b), 3)


def test_evaluate_exact_fraction():
    assert evaluate((1, -3, 1), Fraction(1, 2)) == Fraction(-1, 4)


def test_unimodality_basic():
    rep = unimodality_report((0, 0, 4, 4, 1))
    assert rep.is_unimodal and (rep.mode_lo, rep.mode_hi) == (2, 3)
    bad = unimodality_report((1, 3, 1, 2))
    assert not bad.is_unimodal and bad.first_violation == 3
    assert is_unimodal((0, 3, 3, 1))


def test_plateau_in_middle_of_descent_is_unimodal():
    assert is_unimodal((1, 5, 3, 3, 1))


def test_log_concave_uses_support():
    assert is_log_concave((0, 0, 1, 2, 1))
    assert not is_log_concave((1, 1, 4))
    assert support((0, 0, 3, 1, 0)) == (2, 3)
    with pytest.raises(ValueError):
        support((0,))


def test_mode_chain():
    assert mode_chain_feasible([(1, 1), (2, 2), (2, 3)]) is not None
    assert mode_chain_feasible([(1, 1), (3, 3)]) is None
    assert mode_chain_feasible([(3, 3), (2, 2)]) is None
    assert mode_chain_feasible([]) == ()
    with pytest.raises(ValueError):
        mode_chain_feasible([(3, 2)])


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 3)), min_size=1, max_size=8))
def test_mode_chain_witness_is_valid(raw):
    ivs = [(lo, lo + w) for lo, w in raw]
    chain = mode_chain_feasible(ivs)
    if chain is None:
        return
    assert all(lo <= c <= hi for c, (lo, hi) in zip(chain, ivs))
    assert all(b - a in (0, 1) for a, b in zip(chain, chain[1:]))


@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 2)), min_size=1, max_size=5))
def test_mode_chain_none_means_no_chain(raw):
    import itertools
    ivs = [(lo, lo + w) for lo, w in raw]
    brute = any(all(b - a in (0, 1) for a, b in zip(c, c[1:]))
                for c in itertools.product(*[range(lo, hi + 1) for lo, hi in ivs]))
    assert (mode_chain_feasible(ivs) is not None) == brute


@pytest.mark.parametrize("n", range(0, 12))
def test_binomial_rows_are_log_concave(n):
    row = binomial_row(n)
    assert row == tuple(comb(n, i) for i in range(n + 1))
    assert is_log_concave(row) and is_unimodal(row)
