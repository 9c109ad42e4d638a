"""Dense big-integer coefficient vectors and sequence analytics.

A polynomial is a tuple of non-negative Python ints, index ``i`` holding the
coefficient of ``x**i``.  The domination polynomial of a graph on ``n``
vertices has length ``n + 1``; the empty graph has ``(1,)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

Poly = tuple  # tuple[int, ...]

ONE: Poly = (1,)
X: Poly = (0, 1)

# below this many terms in the shorter factor schoolbook wins
_KRONECKER_MIN = 24


class NegativeCoefficientError(ArithmeticError):
    """A subtraction produced a negative coefficient."""


def _trim(coeffs: Sequence[int]) -> Poly:
    end = len(coeffs)
    while end > 1 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end]) if end else (0,)


def poly(coeffs: Iterable[int]) -> Poly:
    """Normalise an iterable of coefficients (trailing zeros dropped)."""
    c = [int(v) for v in coeffs]
    if any(v < 0 for v in c):
        raise NegativeCoefficientError(f"negative coefficient in {c}")
    return _trim(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def poly_sub(a: Poly, b: Poly) -> Poly:
    """``a - b``; raises if any resulting coefficient is negative."""
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] -= v
        if out[i] < 0:
            raise NegativeCoefficientError(
                f"coefficient {i} would be {out[i]}")
    return _trim(out)


def poly_shift(a: Poly, k: int) -> Poly:
    """Multiply by ``x**k``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    if a == (0,):
        return a
    return (0,) * k + tuple(a)


def poly_scale(a: Poly, c: int) -> Poly:
    if c < 0:
        raise NegativeCoefficientError("negative scale")
    return _trim([c * v for v in a])


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list:
    # Pack each factor into one integer at a slot width that cannot
    # overflow, let CPython's Karatsuba multiply, then unpack.
    bound = max(min(len(a), len(b)) * max(a) * max(b), max(a), max(b))
    width = (bound.bit_length() + 8) // 8
    pa = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in a), "little")
    pb = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in b), "little")
    n = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(n * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little")
            for i in range(n)]


def poly_mul(a: Poly, b: Poly) -> Poly:
    if min(len(a), len(b)) < _KRONECKER_MIN or not any(a) or not any(b):
        return _trim(_mul_schoolbook(a, b))
    return _trim(_mul_kronecker(a, b))


def poly_pow(a: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result, base = ONE, a
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def binomial_row(n: int, shift: int = 0) -> Poly:
    """``x**shift * (1 + x)**n``."""
    return poly_shift(tuple(comb(n, i) for i in range(n + 1)), shift)


def evaluate(p: Poly, x):
    """Horner evaluation; ``x`` may be an int or ``Fraction``."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class UnimodalityReport:
    is_unimodal: bool
    mode_lo: int
    mode_hi: int
    first_violation: Optional[int] = None

    @property
    def modes(self) -> range:
        return range(self.mode_lo, self.mode_hi + 1)

    def has_mode(self, k: int) -> bool:
        return self.is_unimodal and self.mode_lo <= k <= self.mode_hi


def unimodality_report(p: Sequence[int]) -> UnimodalityReport:
    """Classify ``p`` as unimodal (weakly up, then weakly down).

    The violation index is the first position where the sequence strictly
    rises after having strictly fallen.  Leading zeros count as part of the
    sequence.
    """
    top = max(p)
    arg = [i for i, v in enumerate(p) if v == top]
    lo, hi = arg[0], arg[-1]
    fell = False
    for i in range(1, len(p)):
        if p[i] < p[i - 1]:
            fell = True
        elif p[i] > p[i - 1] and fell:
            return UnimodalityReport(False, lo, hi, i)
    assert hi - lo + 1 == len(arg), "argmax of a unimodal sequence must be contiguous"
    return UnimodalityReport(True, lo, hi, None)


def is_unimodal(p: Sequence[int]) -> bool:
    return unimodality_report(p).is_unimodal


def support(p: Sequence[int]) -> tuple[int, int]:
    nz = [i for i, v in enumerate(p) if v]
    if not nz:
        raise ValueError("zero polynomial has no support")
    return nz[0], nz[-1]


def is_log_concave(p: Sequence[int]) -> bool:
    lo, hi = support(p)
    return all(p[i] * p[i] >= p[i - 1] * p[i + 1] for i in range(lo + 1, hi))


def mode_chain_feasible(intervals: Sequence[Sequence[int]]) -> Optional[tuple]:
    """Find integers ``mu_i`` in the given intervals with steps of 0 or 1.

    Forward pass keeps the reachable range for each position; the witness
    is rebuilt backwards, preferring the largest admissible value at each
    earlier position.  Returns ``None`` when no chain exists.
    """
    if not intervals:
        return ()
    for iv in intervals:
        if len(iv) != 2 or iv[0] > iv[1]:
            raise ValueError(f"malformed interval {iv!r}")
    reach = [tuple(intervals[0])]
    for lo, hi in intervals[1:]:
        plo, phi = reach[-1]
        nlo, nhi = max(lo, plo), min(hi, phi + 1)
        if nlo > nhi:
            return None
        reach.append((nlo, nhi))
    chain = [reach[-1][0]]
    for lo, hi in reversed(reach[:-1]):
        nxt = chain[-1]
        chain.append(min(hi, nxt))
        assert chain[-1] >= max(lo, nxt - 1)
    return tuple(reversed(chain))
