import json
from fractions import Fraction
from math import comb, sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dompoly import checks
from dompoly.checks import (CheckOutcome, RatioValue, check_encompassing_inequality,
                            check_first_half, check_leaf_deletion_conjecture,
                            check_low_upper_dom_unimodal, check_many_universal_unimodal,
                            check_mindeg_unimodal, check_regular_lemma,
                            check_single_universal_tail, check_universal_tail,
                            check_upper_dom_tail, direct_exception_tuples, direct_inequality,
                            mindeg_criterion, monotone_inequality_property, ratio_check,
                            regular_lemma_arithmetic, root_w, single_universal_lambda,
                            spider_hypothesis_sweep, universal_count)
from dompoly.families import (cartesian_product, complete, cycle, direct_product,
                              disjoint_union, family_graph, path, spider, star, universal_join)
from dompoly.graph import build_graph
from dompoly.polynomial import evaluate


def test_outcome_requires_witness_on_failure():
    with pytest.raises(ValueError):
        CheckOutcome("x", "s", False)
    o = CheckOutcome("x", "s", True, {"big": 2 ** 80, "r": Fraction(1, 3)}, seed=4)
    d = json.loads(o.to_json())
    assert list(d) == ["check", "subject", "passed", "witness", "engine", "seed"]
    assert d["witness"] == {"big": str(2 ** 80), "r": "1/3"}


def test_ratio_value_invariants():
    assert RatioValue(2, 3, 1).value == Fraction(2, 3)
    with pytest.raises(ValueError):
        RatioValue(1, 0, 0)
    with pytest.raises(ValueError):
        RatioValue(4, 3, 0)


def test_first_half():
    assert check_first_half((0, 0, 4, 4, 1)).passed
    assert check_first_half((0, 3, 3, 1)).passed
    out = check_first_half((0, 5, 1, 1, 1, 1))
    assert not out.passed and out.witness["index"] == 1


@pytest.mark.parametrize("G,ug,t", [(complete(4), 1, 2), (star(4), 3, 3), (path(4), 2, 3)])
def test_upper_dom_examples(G, ug, t):
    out = check_upper_dom_tail(G)
    assert out.passed and out.witness == {"upper_gamma": ug, "threshold": t}


def test_low_upper_dom():
    assert check_low_upper_dom_unimodal(complete(5)).passed
    assert check_low_upper_dom_unimodal(cycle(5)).applicable
    k33 = build_graph(6, [(i, j) for i in range(3) for j in range(3, 6)])
    out = check_low_upper_dom_unimodal(k33)
    assert out.passed and out.applicable and out.witness["upper_gamma"] == 3
    assert not check_low_upper_dom_unimodal(path(10)).applicable


def test_ratio_examples():
    out = ratio_check((0, 3, 3, 1), 2)
    assert out.passed and out.witness["premise"] and out.witness["ratio"] == 1
    out = ratio_check((0, 0, 4, 4, 1), 2)
    assert out.witness["premise"] and out.witness["ratio"] == Fraction(2, 3)
    out = ratio_check((0, 0, 1, 10, 13, 6, 1), 3)
    assert out.passed and out.witness["ratio"] == Fraction(10, 20)
    with pytest.raises(ValueError):
        ratio_check((0, 0, 4, 4, 1), 1)


def test_ratio_checker_fires_on_synthetic_violation():
    out = ratio_check((0, 0, 0, 1, 3), 3)
    assert not out.passed and out.witness["index"] == 3


def test_mindeg():
    assert mindeg_criterion(complete(8))
    assert not mindeg_criterion(path(10))
    assert not mindeg_criterion(direct_product([complete(3), complete(3)]))
    assert check_mindeg_unimodal(complete(8)).passed
    assert not check_mindeg_unimodal(path(10)).applicable


def test_regular_lemma():
    out = check_regular_lemma(cartesian_product([complete(2), complete(4)]))
    assert out.passed and out.applicable and out.witness["boundary"]
    assert not check_regular_lemma(direct_product([complete(3), complete(3)])).applicable
    assert not check_regular_lemma(cycle(6)).applicable
    assert comb(8, 4) - 8 == 62 and comb(8, 5) == 56
    assert all(regular_lemma_arithmetic(n) for n in range(4, 65))
    assert not regular_lemma_arithmetic(2)


def test_direct_exceptions():
    assert direct_exception_tuples(2) == [(3, 3), (3, 4)]
    assert direct_exception_tuples(4) == [(2, 3, 3, 3), (2, 3, 3, 4)]
    assert direct_exception_tuples(5) == [] and direct_exception_tuples(6) == []
    assert len(direct_exception_tuples(3)) == 6
    with pytest.raises(ValueError):
        direct_exception_tuples(7)


def test_boundary_tuple_is_exact():
    # 2^(1*3*3) = 512 vs (2*4*4)^2 = 1024
    assert not direct_inequality((2, 4, 4))
    assert direct_inequality((2, 4, 5))


@pytest.mark.parametrize("tup,i", [((3, 5), 1), ((2, 3, 7), 2), ((2, 3, 3, 3, 3), 0),
                                   ((2, 3, 3, 3, 3), 4)])
def test_monotone_examples(tup, i):
    assert direct_inequality(tup)
    assert monotone_inequality_property(tup, i)


@given(st.lists(st.integers(3, 12), min_size=1, max_size=4), st.integers(2, 12),
       st.data())
def test_monotone_property(rest, first, data):
    tup = tuple(sorted([first] + rest))
    if len(tup) == 2 and tup[0] < 3:
        return
    i = data.draw(st.integers(0, len(tup) - 1))
    assert monotone_inequality_property(tup, i)


def test_root_w_small_m():
    est = root_w(1)
    w1 = (3 - sqrt(5)) / 2
    assert abs(float((est.lo + est.hi) / 2) - w1) < 1e-10
    assert est.width <= Fraction(1, 10 ** 12)
    assert Fraction(3, 8) < root_w(2).lo and root_w(2).hi < Fraction(1, 2)
    est20 = root_w(20)
    assert Fraction(1, 2) - Fraction(1, 2 ** 21) < est20.lo


def test_root_w_sign_conditions():
    for m in (1, 5, 30, 64):
        est = root_w(m)
        f = checks.universal_poly(m)
        assert evaluate(f, est.lo) > 0 > evaluate(f, est.hi)


def test_root_w_errors():
    with pytest.raises(ValueError):
        root_w(1, 0)
    with pytest.raises(ValueError):
        root_w(0)


def test_threshold_index_is_conservative():
    est = root_w(1)
    assert est.threshold_index(6) == 4


def test_universal_checks():
    assert universal_count(complete(5)) == 5
    assert check_universal_tail(complete(5)).passed
    out = check_universal_tail(universal_join(path(5), 1))
    assert out.passed and out.witness["threshold"] == 4
    assert check_universal_tail(universal_join(cycle(6), 2)).passed
    assert not check_universal_tail(path(5)).applicable


def test_many_universal():
    assert check_many_universal_unimodal(universal_join(path(4), 2)).applicable
    two_k2 = disjoint_union([complete(2), complete(2)])
    out = check_many_universal_unimodal(universal_join(two_k2, 3))
    assert out.applicable and out.passed
    assert not check_many_universal_unimodal(path(8)).applicable


def test_single_universal():
    lo, hi = single_universal_lambda()
    assert abs(float(lo) - 0.56984) < 1e-5 and hi - lo <= Fraction(1, 10 ** 12)
    out = check_single_universal_tail(universal_join(path(6), 1))
    assert out.passed and out.witness["threshold"] == 4
    assert check_single_universal_tail(complete(6)).witness["threshold"] == 4


@pytest.mark.parametrize("G", [complete(5), path(6), cycle(5)])
def test_encompassing_examples(G):
    assert check_encompassing_inequality(G).passed
    assert check_encompassing_inequality(G, strict=True).passed


def test_encompassing_edge_of_stated_range():
    # edgeless graph: at k = n/2 the stated inequality breaks
    E4 = build_graph(4, [])
    out = check_encompassing_inequality(E4)
    assert not out.passed and out.witness["k"] == 2
    assert check_encompassing_inequality(E4, strict=True).passed


def test_spider_sweep_small():
    assert spider_hypothesis_sweep(1).witness["triples"] == 1
    out = spider_hypothesis_sweep(5)
    assert out.passed and out.witness["triples"] == 35


def test_spider_sweep_parallel_agrees():
    assert spider_hypothesis_sweep(8, workers=2).to_json() == spider_hypothesis_sweep(8).to_json()


def test_leaf_deletion():
    out = check_leaf_deletion_conjecture(path(6), 5)
    assert out.passed
    assert check_leaf_deletion_conjecture(spider([1, 2, 3]), 1).witness["both_unimodal"]
    assert check_leaf_deletion_conjecture(star(5), 4).passed
    with pytest.raises(ValueError):
        check_leaf_deletion_conjecture(path(6), 2)
    with pytest.raises(ValueError):
        check_leaf_deletion_conjecture(cycle(5), 0)
