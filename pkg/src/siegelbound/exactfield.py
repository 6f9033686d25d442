"""Exact arithmetic in Q and in the cyclotomic fields Q(zeta_n).

Elements are stored on the power basis 1, z, ..., z^(phi(n)-1) with
rational coordinates, reduced modulo the n-th cyclotomic polynomial.
Orders stay tiny here (phi(n) <= 4 in practice), so a dense power-basis
representation is both exact and fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[int, Fraction, str]


class ExactFieldError(ArithmeticError):
    pass


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


def rational_str(x: Fraction) -> str:
    """Serialize a Fraction as 'p' or 'p/q' with positive q."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi undefined for n < 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coeff = num[i + len(den) - 1] / lead
        if coeff != 0:
            quot[i] = coeff
            for j, d in enumerate(den):
                num[i + j] -= coeff * d
    return quot, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_n, low degree first, computed by dividing
    x^n - 1 by the product of Phi_d over proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(num)


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_n) on the power basis, reduced mod Phi_n."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ExactFieldError("root-of-unity order must be positive")
        if len(self.coeffs) != euler_phi(self.n):
            raise ExactFieldError(
                f"need phi({self.n}) = {euler_phi(self.n)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # -- constructors ---------------------------------------------------

    @staticmethod
    def make(n: int, coeffs: Iterable[RationalLike]) -> "CycNum":
        """Build a CycNum from power-basis coordinates of any length,
        reducing modulo Phi_n."""
        if n < 1:
            raise ExactFieldError("root-of-unity order must be positive")
        poly = [as_rational(c) for c in coeffs]
        _, rem = _poly_divmod(poly, cyclotomic_polynomial(n))
        deg = euler_phi(n)
        rem += [Fraction(0)] * (deg - len(rem))
        return CycNum(n, tuple(rem[:deg]))

    @staticmethod
    def rational(x: RationalLike, n: int = 1) -> "CycNum":
        return CycNum.make(n, [as_rational(x)])

    @staticmethod
    def zero(n: int = 1) -> "CycNum":
        return CycNum.rational(0, n)

    @staticmethod
    def one(n: int = 1) -> "CycNum":
        return CycNum.rational(1, n)

    @staticmethod
    def root(n: int, k: int = 1) -> "CycNum":
        """zeta_n^k in reduced form."""
        k %= n
        return CycNum.make(n, [Fraction(0)] * k + [Fraction(1)])

    # -- order handling -------------------------------------------------

    def lift(self, m: int) -> "CycNum":
        """Re-express this element in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ExactFieldError(f"cannot lift Q(zeta_{self.n}) into Q(zeta_{m})")
        step = m // self.n
        poly = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                poly[i * step] = c
        return CycNum.make(m, poly)

    @staticmethod
    def common(x: "CycNum", y: "CycNum") -> tuple["CycNum", "CycNum", int]:
        m = x.n * y.n // math.gcd(x.n, y.n)
        return x.lift(m), y.lift(m), m

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "CycNum":
        other = _coerce(other)
        a, b, m = CycNum.common(self, other)
        return CycNum(m, tuple(p + q for p, q in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycNum":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return _coerce(other) - self

    def __mul__(self, other) -> "CycNum":
        other = _coerce(other)
        a, b, m = CycNum.common(self, other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, p in enumerate(a.coeffs):
            if p == 0:
                continue
            for j, q in enumerate(b.coeffs):
                if q != 0:
                    prod[i + j] += p * q
        return CycNum.make(m, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm
        on the power-basis polynomial and Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        # invariants: r0 = s0 * self (mod Phi_n), r1 = s1 * self (mod Phi_n)
        r0 = list(cyclotomic_polynomial(self.n))
        r1 = _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1 = [Fraction(1)]
        while True:
            quot, rem = _poly_divmod(r0, r1)
            if not rem:
                break
            s_next = _poly_sub(s0, _poly_mul(quot, s1))
            r0, r1 = r1, rem
            s0, s1 = s1, s_next
        if len(r1) != 1:
            raise ExactFieldError("Phi_n not coprime to element polynomial")
        inv = [c / r1[0] for c in s1]
        return CycNum.make(self.n, inv)

    def __truediv__(self, other) -> "CycNum":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates and conversions --------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ExactFieldError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, str, CycNum)):
            a, b, _ = CycNum.common(self, _coerce(other))
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        # hash through the minimal honest invariant: rational elements
        # hash like their Fraction, others by lifted coordinates at n
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycNum({self.n}, {self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(rational_str(c))
            else:
                z = f"z{self.n}" if self.n != 1 else "1"
                base = z if i == 1 else f"{z}^{i}"
                if c == 1:
                    terms.append(base)
                elif c == -1:
                    terms.append(f"-{base}")
                else:
                    terms.append(f"{rational_str(c)}*{base}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "c": [rational_str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "CycNum":
        if not isinstance(obj, dict) or set(obj) != {"n", "c"}:
            raise ExactFieldError(f"malformed CycNum encoding: {obj!r}")
        value = CycNum.make(obj["n"], [as_rational(c) for c in obj["c"]])
        if list(value.coeffs) != [as_rational(c) for c in obj["c"]]:
            raise ExactFieldError(f"CycNum encoding not reduced: {obj!r}")
        return value


def _coerce(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    return CycNum.rational(as_rational(x))


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        for j, q in enumerate(b):
            out[i + j] += p * q
    return _poly_trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, p in enumerate(a):
        out[i] += p
    for i, q in enumerate(b):
        out[i] -= q
    return _poly_trim(out)


# Spec-facing aliases for the operation names.

def cyc_make(n: int, coeffs: Iterable[RationalLike]) -> CycNum:
    return CycNum.make(n, coeffs)


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_neg(x: CycNum) -> CycNum:
    return -x


def cyc_inv(x: CycNum) -> CycNum:
    return x.inverse()


def cyc_root(n: int, k: int) -> CycNum:
    return CycNum.root(n, k)
