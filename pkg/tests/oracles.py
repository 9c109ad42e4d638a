"""Naive reference implementations, independent of the package.

Graphs here are ``(n, set_of_frozenset_edges)``; everything is done with
itertools over explicit subsets, so it is slow and obviously correct.
"""

from itertools import combinations, product
from math import comb


def closed_nbhd(n, edges, v):
    return {v} | {u for u in range(n) if frozenset((u, v)) in edges}


def dominates(n, edges, S):
    covered = set()
    for v in S:
        covered |= closed_nbhd(n, edges, v)
    return len(covered) == n


def dom_poly(n, edges):
    return [sum(1 for S in combinations(range(n), i) if dominates(n, edges, S))
            for i in range(n + 1)]


def upper_gamma(n, edges):
    best = 0
    for i in range(n + 1):
        for S in combinations(range(n), i):
            if dominates(n, edges, S) and all(
                    not dominates(n, edges, [w for w in S if w != v]) for v in S):
                best = i
    return best


def edge_set(pairs):
    return {frozenset(e) for e in pairs}


def path_edges(n):
    return edge_set((i, i + 1) for i in range(n - 1))


def complete_edges(n):
    return edge_set(combinations(range(n), 2))


def cartesian(a, b):
    """K_a box K_b on pairs, relabelled row-major."""
    verts = list(product(range(a), range(b)))
    idx = {v: i for i, v in enumerate(verts)}
    es = set()
    for (g, h), (g2, h2) in combinations(verts, 2):
        if (g == g2) != (h == h2):
            es.add(frozenset((idx[(g, h)], idx[(g2, h2)])))
    return len(verts), es


def direct(a, b):
    verts = list(product(range(a), range(b)))
    idx = {v: i for i, v in enumerate(verts)}
    es = set()
    for (g, h), (g2, h2) in combinations(verts, 2):
        if g != g2 and h != h2:
            es.add(frozenset((idx[(g, h)], idx[(g2, h2)])))
    return len(verts), es


def trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def binomial_poly(n):
    return [comb(n, i) for i in range(n + 1)]
