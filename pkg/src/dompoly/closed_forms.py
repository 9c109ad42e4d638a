"""Fast exact evaluators: the dominated-pair identity, path-append
recurrence, spider and lollipop closed forms, and a tree dynamic program.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .enumeration import brute_force_polynomial
from .graph import (Graph, GraphError, components, contract_vertex,
                    delete_closed_neighborhood, delete_vertices,
                    find_dominated_pair, is_tree)
from .polynomial import (ONE, X, Poly, binomial_row, mode_chain_feasible,
                         poly, poly_add, poly_mul, poly_pow, poly_shift,
                         poly_sub, unimodality_report)


def kps_combine(d_contract: Poly, d_minus: Poly, d_minus_closed: Poly) -> Poly:
    """``x*D(G/v) + D(G-v) + x*D(G-N[v])`` for a dominated pair ``N[u] <= N[v]``."""
    return poly_add(poly_add(poly_shift(d_contract, 1), d_minus),
                    poly_shift(d_minus_closed, 1))


def _key(G: Graph):
    return (G.n, G.adj)


def kps_polynomial(G: Graph, cap=None, allow_large: bool = False) -> Poly:
    """``D(G, x)`` by repeated dominated-pair decomposition.

    Disconnected graphs are split into components first (the polynomial is
    multiplicative over disjoint unions).  A component without a dominated
    pair is handed to the brute-force oracle.  Intermediate graphs are
    memoised on their exact labelled adjacency.
    """
    memo: dict = {}

    def solve(H: Graph) -> Poly:
        if H.n == 0:
            return ONE
        key = _key(H)
        hit = memo.get(key)
        if hit is not None:
            return hit
        comps = components(H)
        if len(comps) > 1:
            out = ONE
            for comp in comps:
                drop = [v for v in range(H.n) if v not in set(comp)]
                out = poly_mul(out, solve(delete_vertices(H, drop)[0]))
        else:
            pair = find_dominated_pair(H)
            if pair is None:
                out = brute_force_polynomial(H, cap, allow_large)
            else:
                v = pair[1]
                out = kps_combine(solve(contract_vertex(H, v)),
                                  solve(delete_vertices(H, [v])[0]),
                                  solve(delete_closed_neighborhood(H, v)))
        memo[key] = out
        return out

    return solve(G)


def three_term_step(f1: Poly, f2: Poly, f3: Poly) -> Poly:
    """``x * (f1 + f2 + f3)``."""
    return poly_shift(poly_add(poly_add(f1, f2), f3), 1)


def extend_sequence(seq: list, upto: int) -> list:
    """Extend ``seq`` in place by the three-term recurrence to length ``upto + 1``."""
    while len(seq) <= upto:
        seq.append(three_term_step(seq[-1], seq[-2], seq[-3]))
    return seq


def path_polynomial(n: int) -> Poly:
    if n < 0:
        raise ValueError("path length must be non-negative")
    seq = [ONE, X, (0, 2, 1)]
    return extend_sequence(seq, n)[n]


def path_polynomials(n_max: int) -> list:
    """``[D(P_0), ..., D(P_n_max)]``."""
    return extend_sequence([ONE, X, (0, 2, 1)], max(n_max, 2))[:n_max + 1]


def append_sequence(G: Graph, v: int, l_max: int, engine=None) -> list:
    """Polynomials of ``G`` with a path of ``0..l_max`` vertices hung off ``v``.

    The first three come from an exact engine (KPS by default); from the
    third appended vertex on the recurrence ``f_j = x(f_{j-1}+f_{j-2}+f_{j-3})``
    takes over.
    """
    from .families import append_path

    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for n={G.n}")
    engine = engine or kps_polynomial
    base = [engine(append_path(G, v, j)) for j in range(min(l_max, 2) + 1)]
    if l_max < 3:
        return base
    return extend_sequence(base, l_max)


# spider leg factors
_CENTRE_IN = {1: (1, 1), 2: (0, 2, 1), 3: (0, 2, 3, 1)}      # 1+x, 2x+x^2, 2x+3x^2+x^3
_CENTRE_OUT = {1: (0, 1), 2: (0, 2, 1), 3: (0, 1, 3, 1)}     # x, 2x+x^2, x+3x^2+x^3
_UNDOMINATED_LEG = {2: (0, 1), 3: (0, 1, 1)}                  # x, x+x^2


class _PowerCache:
    def __init__(self, base: Poly):
        self.powers = [ONE]
        self.base = base

    def __getitem__(self, k: int) -> Poly:
        while len(self.powers) <= k:
            self.powers.append(poly_mul(self.powers[-1], self.base))
        return self.powers[k]


@dataclass(frozen=True)
class SpiderSpec:
    l1: int
    l2: int
    l3: int

    def lambdas(self) -> list:
        return [1] * self.l1 + [2] * self.l2 + [3] * self.l3


class SpiderForms:
    """Spider closed forms with shared power tables, for sweeps."""

    def __init__(self):
        self.cin = {k: _PowerCache(v) for k, v in _CENTRE_IN.items()}
        self.cout = {k: _PowerCache(v) for k, v in _CENTRE_OUT.items()}
        self.undom3 = _PowerCache(_UNDOMINATED_LEG[3])

    def __call__(self, l1: int, l2: int, l3: int) -> Poly:
        if min(l1, l2, l3) < 0:
            raise ValueError("leg counts must be non-negative")
        with_centre = poly_shift(
            poly_mul(poly_mul(self.cin[1][l1], self.cin[2][l2]), self.cin[3][l3]), 1)
        without = poly_mul(poly_mul(self.cout[1][l1], self.cout[2][l2]), self.cout[3][l3])
        if l1 == 0:
            # centre left undominated: every leg avoids its attachment vertex
            without = poly_sub(without, poly_shift(self.undom3[l3], l2))
        return poly_add(with_centre, without)


_default_forms: Optional[SpiderForms] = None


def spider_closed_form(l1: int, l2: int, l3: int) -> Poly:
    """``D(S)`` for a spider with ``l1``, ``l2``, ``l3`` legs of length 1, 2, 3."""
    global _default_forms
    if _default_forms is None:
        _default_forms = SpiderForms()
    return _default_forms(l1, l2, l3)


def tree_polynomial(T: Graph, root: int = 0) -> Poly:
    """``D(T, x)`` for a tree by the three-state rooted DP.

    Per vertex: ``A`` counts sets containing it, ``B`` sets avoiding it but
    dominating it through a child, ``C`` sets avoiding it and leaving it
    undominated (its subtree otherwise dominated).
    """
    if not is_tree(T):
        raise GraphError("input is not a tree")
    if not 0 <= root < T.n:
        raise GraphError(f"root {root} out of range")
    parent = [-1] * T.n
    order = [root]
    seen = 1 << root
    for v in order:
        rest = T.adj[v] & ~seen
        seen |= rest
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            parent[u] = v
            order.append(u)
            rest ^= low
    A = [X] * T.n
    both = [ONE] * T.n      # prod over children of (a + b)
    only_b = [ONE] * T.n    # prod over children of b
    state = [None] * T.n
    for v in reversed(order):
        a = A[v]
        c = only_b[v]
        b = poly_sub(both[v], c)
        state[v] = (a, b, c)
        p = parent[v]
        if p >= 0:
            A[p] = poly_mul(A[p], poly_add(poly_add(a, b), c))
            both[p] = poly_mul(both[p], poly_add(a, b))
            only_b[p] = poly_mul(only_b[p], b)
    a, b, _ = state[root]
    return poly_add(a, b)


def complete_polynomial(m: int) -> Poly:
    """``(1+x)^m - 1``; the constant ``1`` for ``m = 0``."""
    if m == 0:
        return ONE
    return poly_sub(binomial_row(m), ONE)


def _c(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n and n >= 0 else 0


def _lollipop_coeff(m: int, n: int, i: int) -> int:
    """``d_i(L_{m,n})`` for ``1 <= n <= 3``, ``m >= 3``.

    At and above the threshold the binomial identities apply directly.
    Below it the count is the same closed-neighbourhood case analysis with
    the small correction terms kept: a set dominates iff it meets ``K_m``,
    meets ``N[leaf]`` and (for ``n = 3``) meets ``N[p_1]``, where ``p_1`` is
    the path vertex adjacent to ``K_m``.
    """
    if n == 1:
        if i >= 2:
            return _c(m + 1, i) - _c(m - 1, i)
        # misses K_m: S <= {leaf};  misses N[leaf]: S <= K_m - {0};  both: S empty
        return _c(m + 1, i) - _c(1, i) - _c(m - 1, i) + _c(0, i)
    if n == 2:
        if i >= 3:
            return _c(m + 2, i) - _c(m, i)
        # misses K_m: S <= {p1, p2};  misses N[p2]: S <= K_m
        return _c(m + 2, i) - _c(2, i) - _c(m, i) + _c(0, i)
    if i >= 4:
        return _c(m + 3, i) - _c(m + 1, i) - _c(m, i) + _c(m - 1, i)
    # misses K_m: S <= path (3);  misses N[p3]: S <= K_m + {p1} (m+1);
    # misses N[p1]: S <= (K_m - {0}) + {p3} (m);  pairwise: {p1}, {p3}, K_m - {0}
    return (_c(m + 3, i) - _c(3, i) - _c(m + 1, i) - _c(m, i)
            + _c(1, i) + _c(1, i) + _c(m - 1, i) - _c(0, i))


def lollipop_polynomial(m: int, n: int) -> Poly:
    if m < 3:
        raise ValueError(f"lollipop closed form needs m >= 3, got {m}")
    if n < 0:
        raise ValueError("lollipop path length must be non-negative")
    base = [complete_polynomial(m)]
    for k in (1, 2, 3):
        base.append(poly(_lollipop_coeff(m, k, i) for i in range(m + k + 1)))
    if n <= 3:
        return base[n]
    return extend_sequence(base[:3], n)[n]


def lollipop_sequence(m: int, n_max: int) -> list:
    """``[D(L_{m,0}), ..., D(L_{m,n_max})]`` via the recurrence from ``n = 3``."""
    base = [lollipop_polynomial(m, k) for k in range(3)]
    return extend_sequence(base, max(n_max, 2))[:n_max + 1]


def lollipop_mode(m: int, n: int) -> int:
    """Mode position claimed for ``L_{m,n}``, ``n`` in ``{1, 2, 3}``."""
    if n == 1:
        return m // 2 + 1
    if n == 2:
        return (m + 1) // 2 + 1
    if n == 3:
        return m // 2 + 2
    raise ValueError("mode formula only covers n in {1, 2, 3}")


@dataclass(frozen=True)
class HypothesisVerdict:
    passed: bool
    chain: Optional[tuple] = None
    reason: Optional[str] = None
    intervals: tuple = ()


def hypothesis_check(f0: Poly, f1: Poly, f2: Poly, f3: Poly) -> HypothesisVerdict:
    """Are the four polynomials unimodal with a 0/1-step mode chain?"""
    intervals = []
    for idx, f in enumerate((f0, f1, f2, f3)):
        rep = unimodality_report(f)
        if not rep.is_unimodal:
            return HypothesisVerdict(False, reason=f"f{idx} not unimodal "
                                     f"(violation at {rep.first_violation})")
        intervals.append((rep.mode_lo, rep.mode_hi))
    chain = mode_chain_feasible(intervals)
    if chain is None:
        return HypothesisVerdict(False, reason="mode chain infeasible",
                                 intervals=tuple(intervals))
    return HypothesisVerdict(True, chain=chain, intervals=tuple(intervals))


def star_forest_mode(l1: int, l2: int) -> int:
    """Mode index of ``x^l1 (2x + x^2)^l2``."""
    if l1 < 0 or l2 < 0:
        raise ValueError("counts must be non-negative")
    if l1 == 0 and l2 == 0:
        raise ValueError("l1 and l2 cannot both be zero")
    return l1 + 2 * l2 - (2 * l2 + 2 + 2) // 3 + 1


def star_forest_polynomial(l1: int, l2: int) -> Poly:
    return poly_shift(poly_pow((0, 2, 1), l2), l1)
