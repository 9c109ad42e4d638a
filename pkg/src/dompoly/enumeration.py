"""Brute-force ground truth: domination tests, D(G, x), gamma and Gamma.

Subsets are walked depth-first, deciding vertices in index order and
carrying the running coverage mask.  A branch is cut as soon as some
vertex can no longer be covered by the still-undecided vertices, and once
everything is covered the undecided tail is added as a binomial row
instead of being walked.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .graph import Graph, GraphError, mask_of
from .polynomial import Poly, poly

DEFAULT_CAP = 26


class EnumerationCapError(RuntimeError):
    """Graph too large for exhaustive enumeration without an override."""


@dataclass(frozen=True)
class DominationNumbers:
    gamma: int
    upper_gamma: int


def _as_mask(G: Graph, S) -> int:
    if isinstance(S, int):
        if S >> G.n:
            raise GraphError("vertex set mask out of range")
        return S
    S = list(S)
    for v in S:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range for n={G.n}")
    return mask_of(S)


def _cover(G: Graph, mask: int) -> int:
    cov = 0
    while mask:
        low = mask & -mask
        cov |= G.closed_mask(low.bit_length() - 1)
        mask ^= low
    return cov


def is_dominating(G: Graph, S: Iterable[int]) -> bool:
    return _cover(G, _as_mask(G, S)) == G.full_mask


def is_minimal_dominating(G: Graph, S: Iterable[int]) -> bool:
    """Dominating, and removing any single member breaks domination."""
    mask = _as_mask(G, S)
    if _cover(G, mask) != G.full_mask:
        return False
    rest = mask
    while rest:
        low = rest & -rest
        if _cover(G, mask ^ low) == G.full_mask:
            return False
        rest ^= low
    return True


def _check_cap(G: Graph, cap, allow_large: bool) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if G.n > cap and not allow_large:
        raise EnumerationCapError(
            f"n={G.n} exceeds the enumeration cap {cap}; pass an explicit override")


def _suffix_cover(G: Graph) -> list:
    suf = [0] * (G.n + 1)
    for k in range(G.n - 1, -1, -1):
        suf[k] = suf[k + 1] | G.closed_mask(k)
    return suf


def _count(closed, suf, full, n, k, covered, size, tally) -> None:
    while True:
        if covered == full:
            r = n - k
            for j in range(r + 1):
                tally[size + j] += comb(r, j)
            return
        if covered | suf[k] != full:
            return
        # include k (recursive), exclude k (loop)
        _count(closed, suf, full, n, k + 1, covered | closed[k], size + 1, tally)
        k += 1


def _prefixes(G: Graph, suf, depth: int):
    full = G.full_mask
    states = [(0, 0, 0)]
    for _ in range(depth):
        nxt = []
        for k, covered, size in states:
            if covered == full or covered | suf[k] != full or k == G.n:
                nxt.append((k, covered, size))
                continue
            nxt.append((k + 1, covered | G.closed_mask(k), size + 1))
            nxt.append((k + 1, covered, size))
        states = nxt
    return states


def _count_states(args) -> list:
    G, states = args
    closed = [G.closed_mask(v) for v in range(G.n)]
    suf = _suffix_cover(G)
    tally = [0] * (G.n + 1)
    for k, covered, size in states:
        _count(closed, suf, G.full_mask, G.n, k, covered, size, tally)
    return tally


def brute_force_polynomial(G: Graph, cap=None, allow_large: bool = False,
                           workers: int = 1) -> Poly:
    """Exact ``D(G, x)`` by pruned subset enumeration.

    With ``workers > 1`` the first few inclusion decisions are fixed and
    the resulting branches are counted in separate processes; tallies are
    merged by addition, so the result does not depend on scheduling.
    """
    _check_cap(G, cap, allow_large)
    if G.n == 0:
        return (1,)
    suf = _suffix_cover(G)
    if workers <= 1:
        tally = _count_states((G, [(0, 0, 0)]))
    else:
        depth = min(G.n, max(1, (4 * workers).bit_length()))
        states = _prefixes(G, suf, depth)
        chunks = [states[i::workers] for i in range(workers)]
        tally = [0] * (G.n + 1)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_states, [(G, c) for c in chunks]):
                for i, v in enumerate(part):
                    tally[i] += v
    return poly(tally)


def _upper_gamma(G: Graph) -> int:
    """Largest minimal dominating set.

    Branches only over irredundant partial sets: once a chosen vertex has
    no private neighbour left, no superset can be minimal.  Leaves are
    re-checked with the removal definition.
    """
    n, full = G.n, G.full_mask
    closed = [G.closed_mask(v) for v in range(n)]
    suf = _suffix_cover(G)
    best = 0

    def irredundant(chosen: list) -> bool:
        for i, v in enumerate(chosen):
            others = 0
            for j, w in enumerate(chosen):
                if j != i:
                    others |= closed[w]
            if closed[v] & ~others == 0:
                return False
        return True

    def walk(k: int, chosen: list, covered: int) -> None:
        nonlocal best
        if covered == full:
            if len(chosen) > best and is_minimal_dominating(G, chosen):
                best = len(chosen)
            return
        if k == n or covered | suf[k] != full:
            return
        if len(chosen) + (n - k) <= best:
            return
        chosen.append(k)
        if irredundant(chosen):
            walk(k + 1, chosen, covered | closed[k])
        chosen.pop()
        walk(k + 1, chosen, covered)

    walk(0, [], 0)
    return best


def domination_numbers(G: Graph, cap=None, allow_large: bool = False) -> DominationNumbers:
    if G.n == 0:
        raise GraphError("domination numbers of the empty graph are undefined")
    _check_cap(G, cap, allow_large)
    p = brute_force_polynomial(G, cap, allow_large)
    gamma = next(i for i, v in enumerate(p) if v)
    return DominationNumbers(gamma, _upper_gamma(G))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DOMPOLY_WORKERS", "1")))
    except ValueError:
        return 1
