"""Mechanical verification of coefficient inequalities and finite sweeps.

Every check returns a :class:`CheckOutcome`.  Inequalities involving
``log2`` are compared as exact integers (``2**a >= b**2``) and root
enclosures are kept as ``Fraction`` pairs.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, prod
from typing import Any, Callable, Optional, Sequence

from .closed_forms import SpiderForms, hypothesis_check, tree_polynomial
from .enumeration import brute_force_polynomial, domination_numbers
from .graph import Graph, graph_digest, is_regular, is_tree, min_degree
from .polynomial import Poly, evaluate, unimodality_report


@dataclass
class CheckOutcome:
    check_name: str
    subject: str
    passed: bool
    witness: Optional[dict] = None
    engine: str = "brute"
    seed: Optional[int] = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failed outcome must carry a witness")

    @property
    def applicable(self) -> bool:
        return not (self.witness or {}).get("not_applicable", False)

    def to_dict(self) -> dict:
        return {"check": self.check_name, "subject": self.subject,
                "passed": self.passed, "witness": _jsonable(self.witness),
                "engine": self.engine, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _jsonable(obj: Any):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2 ** 53:
        return str(obj)
    return obj


def _not_applicable(name: str, subject: str, reason: str, **extra) -> CheckOutcome:
    return CheckOutcome(name, subject, True, {"not_applicable": True, "reason": reason, **extra})


def _subject(G: Graph, subject: Optional[str]) -> str:
    return subject if subject is not None else graph_digest(G)


def pow2_at_least(a: int, b: int) -> bool:
    """Exact ``2**a >= b`` for integers ``a >= 0`` and ``b >= 1``."""
    return (b - 1).bit_length() <= a


def _first_rise(p: Poly, start: int) -> Optional[int]:
    """First ``i >= start`` with ``p[i] < p[i+1]``."""
    for i in range(max(start, 0), len(p) - 1):
        if p[i] < p[i + 1]:
            return i
    return None


# ------------------------------------------------------------ coefficient checks

def check_first_half(p: Poly, subject: str = "polynomial") -> CheckOutcome:
    """``d_i <= d_{i+1}`` for every ``0 <= i < n/2``."""
    n = len(p) - 1
    for i in range(n):
        if 2 * i >= n:
            break
        if p[i] > p[i + 1]:
            return CheckOutcome("first-half", subject, False, {"index": i, "d_i": p[i], "d_i+1": p[i + 1]})
    return CheckOutcome("first-half", subject, True)


def upper_dom_threshold(n: int, upper_gamma: int) -> int:
    return -(-(n + upper_gamma - 1) // 2)


def check_upper_dom_tail(G: Graph, subject=None, p: Optional[Poly] = None,
                         upper_gamma: Optional[int] = None) -> CheckOutcome:
    """``d_i >= d_{i+1}`` for every integer ``i >= (n + Gamma - 1)/2``."""
    subject = _subject(G, subject)
    p = p if p is not None else brute_force_polynomial(G)
    ug = upper_gamma if upper_gamma is not None else domination_numbers(G).upper_gamma
    t = upper_dom_threshold(G.n, ug)
    bad = _first_rise(p, t)
    w = {"upper_gamma": ug, "threshold": t}
    if bad is not None:
        return CheckOutcome("upper-dom", subject, False, {**w, "index": bad})
    return CheckOutcome("upper-dom", subject, True, w)


def check_low_upper_dom_unimodal(G: Graph, subject=None, p=None, upper_gamma=None) -> CheckOutcome:
    subject = _subject(G, subject)
    n = G.n
    ug = upper_gamma if upper_gamma is not None else domination_numbers(G).upper_gamma
    if not ((n % 2 == 1 and ug <= 4) or (n % 2 == 0 and ug <= 3)):
        return _not_applicable("low-upper-dom", subject, f"Gamma={ug} too large for n={n}")
    p = p if p is not None else brute_force_polynomial(G)
    rep = unimodality_report(p)
    half = -(-n // 2)
    w = {"upper_gamma": ug, "modes": [rep.mode_lo, rep.mode_hi], "expected": [half, half + 1]}
    ok = rep.is_unimodal and (rep.has_mode(half) or rep.has_mode(half + 1))
    return CheckOutcome("low-upper-dom", subject, ok, w)


@dataclass(frozen=True)
class RatioValue:
    """``d_k / C(n, k)`` kept as an unreduced pair."""

    numerator: int
    denominator: int
    k: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator <= self.denominator:
            raise ValueError("ratio must lie in [0, 1]")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def ratio_premise(p: Poly, k: int) -> bool:
    """``d_k / C(n,k) >= (n-k)/(k+1)``, cross-multiplied."""
    n = len(p) - 1
    return p[k] * (k + 1) >= (n - k) * comb(n, k)


def ratio_value(p: Poly, k: int) -> RatioValue:
    n = len(p) - 1
    return RatioValue(p[k], comb(n, k), k)


def ratio_check(p: Poly, k: int, subject: str = "polynomial") -> CheckOutcome:
    """If the ratio premise holds at ``k``, the tail from ``k`` must be non-increasing."""
    n = len(p) - 1
    if 2 * k < n:
        raise ValueError(f"k={k} is below n/2 for n={n}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    premise = ratio_premise(p, k)
    w = {"k": k, "ratio": ratio_value(p, k).value, "bound": Fraction(n - k, k + 1), "premise": premise}
    if not premise:
        return CheckOutcome("ratio", subject, True, w)
    bad = _first_rise(p, k)
    if bad is not None:
        return CheckOutcome("ratio", subject, False, {**w, "index": bad})
    return CheckOutcome("ratio", subject, True, w)


def mindeg_criterion(G: Graph) -> bool:
    """``delta(G) >= 2 log2 n`` evaluated as ``2**delta >= n**2``."""
    return pow2_at_least(min_degree(G), G.n * G.n)


def check_mindeg_unimodal(G: Graph, subject=None, p=None) -> CheckOutcome:
    subject = _subject(G, subject)
    if not mindeg_criterion(G):
        return _not_applicable("mindeg", subject, "2^delta < n^2", delta=min_degree(G))
    p = p if p is not None else brute_force_polynomial(G)
    rep = unimodality_report(p)
    half = -(-G.n // 2)
    ok = rep.has_mode(half)
    return CheckOutcome("mindeg", subject, ok, {"modes": [rep.mode_lo, rep.mode_hi], "expected": half})


def regular_lemma_arithmetic(n: int) -> bool:
    """``C(2n, n) - 2n >= C(2n, n+1)``."""
    return comb(2 * n, n) - 2 * n >= comb(2 * n, n + 1)


def check_regular_lemma(G: Graph, subject=None, p=None) -> CheckOutcome:
    """m-regular on 2n vertices with ``n - 1 <= m`` and ``n >= 4``: unimodal, mode n."""
    subject = _subject(G, subject)
    m = is_regular(G)
    if m is None or G.n % 2:
        return _not_applicable("regular", subject, "not regular of even order")
    half = G.n // 2
    if not (half - 1 <= m < G.n and half >= 4):
        return _not_applicable("regular", subject, f"degree {m} / half-order {half} out of range")
    p = p if p is not None else brute_force_polynomial(G)
    rep = unimodality_report(p)
    w = {"degree": m, "half": half, "modes": [rep.mode_lo, rep.mode_hi], "boundary": half == 4}
    return CheckOutcome("regular", subject, rep.has_mode(half), w)


def encompassing_k_max(n: int, strict: bool = False) -> int:
    """Largest ``k`` covered: ``k <= (n+1)/2``, or ``2k < n`` when ``strict``."""
    return (n - 1) // 2 if strict else (n + 1) // 2


def check_encompassing_inequality(G: Graph, subject=None, p=None,
                                  strict: bool = False) -> CheckOutcome:
    """``C(n,k+1) - d_{n-k-1} >= C(n,k) - d_{n-k}`` over ``0 <= k <= k_max``.

    The default range is ``k <= (n+1)/2``.  The Hall-type counting argument
    only covers ``n - k >= k + 1``; ``strict=True`` restricts to that range.
    """
    subject = _subject(G, subject)
    p = p if p is not None else brute_force_polynomial(G)
    n = G.n
    k_max = min(encompassing_k_max(n, strict), n - 1)
    name = "encompassing-strict" if strict else "encompassing"
    for k in range(k_max + 1):
        lhs = comb(n, k + 1) - p[n - k - 1]
        rhs = comb(n, k) - p[n - k]
        if lhs < rhs:
            return CheckOutcome(name, subject, False, {"k": k, "lhs": lhs, "rhs": rhs})
    return CheckOutcome(name, subject, True, {"k_max": k_max})


# ------------------------------------------------------------ product exceptions

def direct_inequality(ns: Sequence[int]) -> bool:
    """``prod(n_i - 1) >= 2 log2(prod n_i)``, exactly."""
    return pow2_at_least(prod(v - 1 for v in ns), prod(ns) ** 2)


def _admissible(ns: Sequence[int]) -> bool:
    s = sorted(ns)
    if len(s) < 2 or s[0] < 2 or s[1] < 3:
        return False
    return not (len(s) == 2 and s[0] < 3)


def direct_exception_tuples(t: int, cap: int = 16) -> list:
    """Sorted tuples violating the minimum-degree inequality.

    Enumerates non-decreasing admissible tuples with coordinates up to
    ``cap``.  Every tuple with a coordinate equal to ``cap`` is required to
    satisfy the inequality; since satisfaction is preserved under raising a
    coordinate, tuples beyond the cap cannot fail either.
    """
    if not 2 <= t <= 6:
        raise ValueError("t must lie in [2, 6]")
    fails = []
    for ns in itertools.combinations_with_replacement(range(2, cap + 1), t):
        if not _admissible(ns):
            continue
        ok = direct_inequality(ns)
        if ns[-1] == cap and not ok:
            raise AssertionError(f"boundary tuple {ns} fails; cap {cap} too small")
        if not ok:
            fails.append(ns)
    return fails


def monotone_inequality_property(ns: Sequence[int], i: int) -> bool:
    """If ``ns`` satisfies the inequality, so does ``ns`` with coordinate ``i`` raised by one."""
    if not _admissible(ns):
        raise ValueError(f"{tuple(ns)} is outside the admissible tuples")
    if not direct_inequality(ns):
        return True
    bumped = list(ns)
    bumped[i] += 1
    return direct_inequality(bumped)


DIRECT_EXCEPTIONS = {
    2: [(3, 3), (3, 4)],
    3: [(2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 4, 4), (3, 3, 3)],
    4: [(2, 3, 3, 3), (2, 3, 3, 4)],
    5: [],
    6: [],
}


# ------------------------------------------------------------ roots

@dataclass(frozen=True)
class RootEstimate:
    m: int
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def threshold_index(self, n: int) -> int:
        """``ceil((1 - hi) n)``: the upper end keeps the tail check conservative."""
        return ceil((1 - self.hi) * n)


def universal_poly(m: int) -> Poly:
    """Coefficients of ``x^{m+1} - x^m - 2x + 1`` (signed, not a DomPolynomial)."""
    c = [0] * (m + 2)
    c[0] += 1
    c[1] -= 2
    c[m] -= 1
    c[m + 1] += 1
    return tuple(c)


def _bisect(f: Callable, lo: Fraction, hi: Fraction, tol: Fraction,
            done: Callable = lambda lo, hi: True, max_steps: int = 4096):
    """Keep ``f(lo) > 0 > f(hi)`` while halving until width <= tol and ``done``."""
    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi or flo < 0 < fhi):
        raise ValueError("bracket does not straddle a sign change")
    rising = flo < 0
    for _ in range(max_steps):
        if hi - lo <= tol and done(lo, hi):
            return lo, hi
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) != rising:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("bisection did not converge")


def _as_fraction(tol) -> Fraction:
    tol = Fraction(str(tol)) if isinstance(tol, float) else Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


def root_bracket(m: int) -> tuple:
    return Fraction(1, 2) - Fraction(1, 2 ** (m + 1)), Fraction(1, 2)


def root_w(m: int, tol=1e-12) -> RootEstimate:
    """Enclose the smallest positive root of ``x^{m+1} - x^m - 2x + 1``.

    Exact rational bisection from ``(0, 1/2)``.  The polynomial has at most
    two positive roots and one of them exceeds ``1/2``, so the sign change
    in ``(0, 1/2)`` is the smallest one.  Refinement continues past ``tol``
    until the enclosure sits strictly inside ``(1/2 - 2^-(m+1), 1/2)``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    tol = _as_fraction(tol)
    coeffs = universal_poly(m)
    f = lambda x: evaluate(coeffs, x)
    blo, bhi = root_bracket(m)
    lo, hi = _bisect(f, Fraction(0), Fraction(1, 2), tol,
                     done=lambda lo, hi: blo < lo and hi < bhi)
    est = RootEstimate(m, lo, hi)
    assert f(lo) > 0 > f(hi) or lo == hi
    assert blo < est.lo and est.hi < bhi
    return est


def single_universal_lambda(tol=1e-12) -> tuple:
    """Enclosure of the root of ``l^3 - (1 - l)^2`` in ``(0, 1)``."""
    g = lambda x: x ** 3 - (1 - x) ** 2
    return _bisect(g, Fraction(0), Fraction(1), _as_fraction(tol))


def universal_count(G: Graph) -> int:
    return sum(1 for d in G.degrees() if d == G.n - 1)


def _tail_outcome(name, subject, p, start, w) -> CheckOutcome:
    bad = _first_rise(p, start)
    if bad is not None:
        return CheckOutcome(name, subject, False, {**w, "index": bad})
    return CheckOutcome(name, subject, True, w)


def check_universal_tail(G: Graph, subject=None, p=None, tol=1e-12) -> CheckOutcome:
    subject = _subject(G, subject)
    m = universal_count(G)
    if m == 0:
        return _not_applicable("universal", subject, "no universal vertex")
    est = root_w(m, tol)
    t = est.threshold_index(G.n)
    p = p if p is not None else brute_force_polynomial(G)
    return _tail_outcome("universal", subject, p, t, {"m": m, "threshold": t, "w_hi": est.hi})


def check_single_universal_tail(G: Graph, subject=None, p=None, tol=1e-12) -> CheckOutcome:
    subject = _subject(G, subject)
    if universal_count(G) == 0:
        return _not_applicable("single-universal", subject, "no universal vertex")
    lo, _ = single_universal_lambda(tol)
    t = ceil(lo * G.n)
    p = p if p is not None else brute_force_polynomial(G)
    return _tail_outcome("single-universal", subject, p, t, {"threshold": t, "lambda_lo": lo})


def check_many_universal_unimodal(G: Graph, subject=None, p=None) -> CheckOutcome:
    """At least ``log2(n) - 1`` universal vertices (``2^{m+1} >= n``): unimodal near n/2."""
    subject = _subject(G, subject)
    m = universal_count(G)
    if m == 0 or not pow2_at_least(m + 1, G.n):
        return _not_applicable("many-universal", subject, "2^(m+1) < n", m=m)
    p = p if p is not None else brute_force_polynomial(G)
    rep = unimodality_report(p)
    half = -(-G.n // 2)
    ok = rep.is_unimodal and (rep.has_mode(half) or rep.has_mode(half + 1))
    return CheckOutcome("many-universal", subject, ok,
                        {"m": m, "modes": [rep.mode_lo, rep.mode_hi]})


# ------------------------------------------------------------ spider sweep

def _sweep_chunk(args) -> list:
    T, l1_values = args
    forms = SpiderForms()
    failures = []
    count = 0
    for l1 in l1_values:
        for l2 in range(T - l1):
            for l3 in range(T - l1 - l2):
                v = hypothesis_check(forms(l1, l2, l3), forms(l1 + 1, l2, l3),
                                     forms(l1, l2 + 1, l3), forms(l1, l2, l3 + 1))
                count += 1
                if not v.passed:
                    failures.append({"triple": [l1, l2, l3], "reason": v.reason})
    return [count, failures]


def spider_hypothesis_sweep(T: int, workers: int = 1) -> CheckOutcome:
    """Path-append hypotheses at the centre of every spider with legs <= 3 and < T legs.

    For each ``(l1, l2, l3)`` with ``l1 + l2 + l3 <= T - 1`` the spider and its
    three one-leg extensions (by a leg of 1, 2 and 3 vertices) are checked.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    # interleave l1 values so chunks carry similar work
    chunks = [list(range(i, T, max(workers, 1))) for i in range(max(workers, 1))]
    if workers <= 1:
        results = [_sweep_chunk((T, chunks[0]))]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, [(T, c) for c in chunks]))
    count = sum(r[0] for r in results)
    failures = sorted((f for r in results for f in r[1]), key=lambda f: f["triple"])
    w = {"triples": count, "failures": failures}
    return CheckOutcome("spider-sweep", f"spiders:T={T}", not failures, w, engine="closed")


# ------------------------------------------------------------ leaf deletion

def check_leaf_deletion_conjecture(T: Graph, v: int, subject=None) -> CheckOutcome:
    """Exploratory: do ``D(T)`` and ``D(T - v)`` have modes at distance <= 1?"""
    from .graph import delete_vertices

    subject = _subject(T, subject)
    if not is_tree(T):
        raise ValueError("input is not a tree")
    if T.degree(v) != 1:
        raise ValueError(f"vertex {v} is not a leaf")
    p = tree_polynomial(T)
    q = tree_polynomial(delete_vertices(T, [v])[0]) if T.n > 1 else (1,)
    a, b = unimodality_report(p), unimodality_report(q)
    gap = max(0, b.mode_lo - a.mode_hi, a.mode_lo - b.mode_hi)
    ok = a.is_unimodal and b.is_unimodal and gap <= 1
    w = {"modes": [a.mode_lo, a.mode_hi], "modes_deleted": [b.mode_lo, b.mode_hi],
         "both_unimodal": a.is_unimodal and b.is_unimodal, "distance": gap}
    return CheckOutcome("leaf-deletion", subject, ok, w, engine="tree")
