import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dompoly.enumeration import (EnumerationCapError, brute_force_polynomial,
                                 domination_numbers, is_dominating, is_minimal_dominating)
from dompoly.families import complete, cycle, erdos_renyi, path, star
from dompoly.graph import EMPTY, GraphError, build_graph

import oracles


@st.composite
def small_graphs(draw, n_max=8):
    n = draw(st.integers(1, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return n, chosen


@given(small_graphs())
@settings(max_examples=80, deadline=None)
def test_brute_force_matches_oracle(data):
    n, edges = data
    G = build_graph(n, edges)
    assert list(brute_force_polynomial(G)) == oracles.dom_poly(n, oracles.edge_set(edges))


@given(small_graphs(7))
@settings(max_examples=50, deadline=None)
def test_upper_gamma_matches_oracle(data):
    n, edges = data
    G = build_graph(n, edges)
    dn = domination_numbers(G)
    assert dn.upper_gamma == oracles.upper_gamma(n, oracles.edge_set(edges))
    assert dn.gamma <= dn.upper_gamma


# frozen oracle outputs
@pytest.mark.parametrize("G,expected,gamma,ug", [
    (path(4), (0, 0, 4, 4, 1), 2, 2),
    (cycle(5), (0, 0, 5, 10, 5, 1), 2, 2),
    (star(4), (0, 1, 3, 4, 1), 1, 3),
    (complete(3), (0, 3, 3, 1), 1, 1),
    (path(6), (0, 0, 1, 10, 13, 6, 1), 2, 3),
])
def test_frozen_examples(G, expected, gamma, ug):
    assert brute_force_polynomial(G) == expected
    dn = domination_numbers(G)
    assert (dn.gamma, dn.upper_gamma) == (gamma, ug)


def test_empty_graph():
    assert brute_force_polynomial(EMPTY) == (1,)
    with pytest.raises(GraphError):
        domination_numbers(EMPTY)


def test_predicates():
    G = path(4)
    assert is_dominating(G, [1, 2])
    assert not is_dominating(G, [0, 1])
    assert is_minimal_dominating(G, [0, 3])
    assert not is_minimal_dominating(G, [0, 1])
    assert is_minimal_dominating(G, {1, 3})
    assert not is_minimal_dominating(G, [0, 1, 3])
    assert is_dominating(G, 0b0110)
    with pytest.raises(GraphError):
        is_dominating(G, [7])


def test_cap_and_override():
    G = path(27)
    with pytest.raises(EnumerationCapError):
        brute_force_polynomial(G)
    with pytest.raises(EnumerationCapError):
        brute_force_polynomial(path(6), cap=5)
    assert brute_force_polynomial(path(6), cap=5, allow_large=True) == (0, 0, 1, 10, 13, 6, 1)


def test_parallel_equals_serial():
    rng = random.Random(11)
    for _ in range(3):
        G = erdos_renyi(14, 0.3, rng)
        assert brute_force_polynomial(G, workers=2) == brute_force_polynomial(G)
