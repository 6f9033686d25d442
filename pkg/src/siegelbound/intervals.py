"""Outward-rounded rational interval arithmetic, just enough to
evaluate the prime-power determining bound, which mixes rationals with
pi and sqrt(3).  Endpoints are exact Fractions, so enclosures are
certified by construction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) - self

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Interval":
        return self * _coerce(other).reciprocal()

def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def sqrt_interval(x: Fraction, precision_bits: int) -> Interval:
    """Enclosure of sqrt(x) by bisection to width 2^-precision_bits."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Interval.point(0)
    lo, hi = Fraction(0), max(Fraction(1), x)
    target = Fraction(1, 2 ** precision_bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        if mid * mid <= x:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


def _arctan_inv_interval(m: int, terms: int) -> Interval:
    """Enclosure of arctan(1/m) from the alternating Taylor series;
    consecutive partial sums bracket the limit."""
    s = Fraction(0)
    partials = []
    for k in range(terms):
        term = Fraction((-1) ** k, (2 * k + 1) * m ** (2 * k + 1))
        s += term
        partials.append(s)
    return Interval(min(partials[-2:]), max(partials[-2:]))


def pi_interval(terms: int = 12) -> Interval:
    """Machin's formula pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    return 16 * _arctan_inv_interval(5, terms) - 4 * _arctan_inv_interval(239, terms)
