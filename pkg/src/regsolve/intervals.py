"""Directed-rounding interval arithmetic on float64 arrays.

All numeric verdicts in this package compare against rigorous enclosures,
never against bare floats.  We do not touch the FPU rounding mode; instead
every primitive operation is computed in round-to-nearest and then widened
outward by one ulp on each side, which dominates the half-ulp rounding
error of the operation itself.  Library sin/cos are widened by a few ulps
since they are only guaranteed faithfully rounded.

Intervals are pairs of equally-shaped numpy arrays (lo, hi) with lo <= hi.
Scalars are shape-() arrays.  Exact rational endpoints enter through
`from_fraction`, which brackets the value between adjacent doubles.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_INF = np.inf

# sin/cos error allowance in ulps (glibc is < 1 ulp; widen generously).
_TRIG_ULPS = 4


def _down(a: np.ndarray) -> np.ndarray:
    return np.nextafter(a, -_INF)


def _up(a: np.ndarray) -> np.ndarray:
    return np.nextafter(a, _INF)


class Iv:
    """An interval box: elementwise [lo, hi] over numpy arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=np.float64)
        self.hi = np.asarray(hi, dtype=np.float64)

    @staticmethod
    def point(x) -> "Iv":
        a = np.asarray(x, dtype=np.float64)
        return Iv(a, a)

    @staticmethod
    def from_fraction(q: Fraction) -> "Iv":
        f = float(q)
        if Fraction(f) == q:
            return Iv.point(f)
        # f rounds to nearest; the true value is within one ulp.
        return Iv(np.nextafter(f, -_INF), np.nextafter(f, _INF))

    def __repr__(self):
        return f"Iv({self.lo!r}, {self.hi!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, o: "Iv") -> "Iv":
        return Iv(_down(self.lo + o.lo), _up(self.hi + o.hi))

    def __sub__(self, o: "Iv") -> "Iv":
        return Iv(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __neg__(self) -> "Iv":
        return Iv(-self.hi, -self.lo)

    def __mul__(self, o: "Iv") -> "Iv":
        p1 = self.lo * o.lo
        p2 = self.lo * o.hi
        p3 = self.hi * o.lo
        p4 = self.hi * o.hi
        lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
        hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
        return Iv(_down(lo), _up(hi))

    def divide(self, o: "Iv"):
        """Return (quotient Iv, ok mask).  Entries whose divisor interval
        contains 0 are flagged False and filled with [-inf, inf]."""
        ok = ~((o.lo <= 0.0) & (o.hi >= 0.0))
        safe_lo = np.where(ok, o.lo, 1.0)
        safe_hi = np.where(ok, o.hi, 1.0)
        q1 = self.lo / safe_lo
        q2 = self.lo / safe_hi
        q3 = self.hi / safe_lo
        q4 = self.hi / safe_hi
        lo = np.minimum(np.minimum(q1, q2), np.minimum(q3, q4))
        hi = np.maximum(np.maximum(q1, q2), np.maximum(q3, q4))
        lo = np.where(ok, _down(lo), -_INF)
        hi = np.where(ok, _up(hi), _INF)
        return Iv(lo, hi), ok

    def abs(self) -> "Iv":
        lo = np.where(self.lo > 0.0, self.lo, np.where(self.hi < 0.0, -self.hi, 0.0))
        hi = np.maximum(np.abs(self.lo), np.abs(self.hi))
        return Iv(lo, hi)

    def sq(self) -> "Iv":
        a = self.abs()
        return Iv(_down(a.lo * a.lo), _up(a.hi * a.hi))

    # -- queries ------------------------------------------------------------

    def contains_zero(self) -> np.ndarray:
        return (self.lo <= 0.0) & (self.hi >= 0.0)

    def width(self) -> np.ndarray:
        return self.hi - self.lo

    def mid(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)


def iv_sin(theta: np.ndarray) -> Iv:
    v = np.sin(theta)
    lo, hi = v, v
    for _ in range(_TRIG_ULPS):
        lo, hi = _down(lo), _up(hi)
    return Iv(np.maximum(lo, -1.0), np.minimum(hi, 1.0))


def iv_cos(theta: np.ndarray) -> Iv:
    v = np.cos(theta)
    lo, hi = v, v
    for _ in range(_TRIG_ULPS):
        lo, hi = _down(lo), _up(hi)
    return Iv(np.maximum(lo, -1.0), np.minimum(hi, 1.0))


def iv_sum(items) -> Iv:
    """Sum a list of Iv with outward rounding at each accumulation."""
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = acc + x
    return acc
