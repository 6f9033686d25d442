"""Even-encoded half-integral index forms, their reduction theory, and
enumeration of the determining set for a prime-power level.

A triple (a, b, c) with a, c even encodes the positive definite
half-integral matrix [[a/2, b/2], [b/2, c/2]], written [a^b c].  The
reduced domain is 0 <= 2b <= a <= c; equivalence is unimodular
congruence t -> u^T t u with det(u) = +-1, matching the enumeration
the downstream representation counts rely on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .intervals import Interval, pi_interval, sqrt_interval


class QuadFormError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class IndexForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a % 2 or self.c % 2:
            raise QuadFormError(f"[{self.a}^{self.b} {self.c}]: a and c must be even")
        if self.a <= 0 or self.c <= 0 or self.a * self.c - self.b * self.b <= 0:
            raise QuadFormError(f"[{self.a}^{self.b} {self.c}] is not positive definite")

    def det4(self) -> int:
        """4 * det of the half-integral matrix."""
        return self.a * self.c - self.b * self.b

    def transform(self, m: int, n: int, o: int, p: int) -> "IndexForm":
        """Congruence action by u = [[m, n], [o, p]]: t -> u^T t u."""
        a, b, c = self.a, self.b, self.c
        return IndexForm(
            m * m * a + 2 * m * o * b + o * o * c,
            m * n * a + (m * p + n * o) * b + o * p * c,
            n * n * a + 2 * n * p * b + p * p * c,
        )

    def __str__(self):
        return f"[{self.a}^{self.b} {self.c}]"

    def triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class SendingMatrix:
    s1: int
    s2: int
    s4: int

    def __post_init__(self):
        if self.s1 <= 0 or self.s1 * self.s4 - self.s2 * self.s2 <= 0:
            raise QuadFormError(
                f"sending matrix [[{self.s1},{self.s2}],[{self.s2},{self.s4}]] "
                "is not positive definite"
            )

    def det(self) -> int:
        return self.s1 * self.s4 - self.s2 * self.s2

    def trace(self) -> int:
        return self.s1 + self.s4

    def conjugate(self, m: int, n: int, o: int, p: int) -> "SendingMatrix":
        s1, s2, s4 = self.s1, self.s2, self.s4
        return SendingMatrix(
            m * m * s1 + 2 * m * o * s2 + o * o * s4,
            m * n * s1 + (m * p + n * o) * s2 + o * p * s4,
            n * n * s1 + 2 * n * p * s2 + p * p * s4,
        )

    def __str__(self):
        return f"[[{self.s1},{self.s2}],[{self.s2},{self.s4}]]"


Threshold = Union[Fraction, Interval]


def dyadic_trace(t: IndexForm) -> Fraction:
    return Fraction(t.a + t.c - abs(t.b), 2)


def inner(t: IndexForm, s: SendingMatrix) -> Fraction:
    """Trace pairing of the half-integral matrix of t against s."""
    return Fraction(t.a * s.s1, 2) + t.b * s.s2 + Fraction(t.c * s.s4, 2)


def is_reduced(t: IndexForm) -> bool:
    return 0 <= 2 * t.b <= t.a <= t.c


def reduce(t: IndexForm) -> IndexForm:
    """Unique reduced representative of the unimodular class of t."""
    a, b, c = t.a, t.b, t.c
    while True:
        if a > c:
            a, c = c, a
        # shear x -> x + k*y to bring |b| <= a/2
        if 2 * abs(b) > a:
            k = -round(Fraction(b, a))
            b, c = b + k * a, c + 2 * k * b + k * k * a
            continue
        if a > c:
            continue
        break
    b = abs(b)
    # boundary normalization is already implied: 0 <= 2b <= a <= c
    result = IndexForm(a, b, c)
    assert is_reduced(result)
    return result


def _check_prime_power(level: int) -> tuple[int, int]:
    """Split level into (p, i) with level = p^i, p prime."""
    if level < 2:
        raise QuadFormError(f"level {level} is not a prime power")
    for p in range(2, level + 1):
        if level % p == 0:
            i = 0
            m = level
            while m % p == 0:
                m //= p
                i += 1
            if m != 1:
                raise QuadFormError(f"level {level} is not a prime power")
            return p, i
    raise QuadFormError(f"level {level} is not a prime power")


def determining_bound(p: int, i: int, k: int, precision_bits: int = 64) -> Threshold:
    """Dyadic-trace cutoff below which coefficients determine the form.

    For level p the cutoff is the exact rational (1+p)k/6.  For a
    higher prime power it is 3/2 + p^i (2k/(2 sqrt(3) pi) - 3/(2 p^i))
    * prod_{j=1..i} (1 + p^-j), returned as a certified enclosure.
    """
    if i < 1 or k < 1:
        raise QuadFormError("need i >= 1 and k >= 1")
    if i == 1:
        return Fraction((1 + p) * k, 6)
    pi_enc = pi_interval()
    sqrt3 = sqrt_interval(Fraction(3), precision_bits)
    q = p ** i
    factor = Fraction(2 * k, 2) * (sqrt3 * pi_enc).reciprocal() - Fraction(3, 2 * q)
    prod = Fraction(1)
    for j in range(1, i + 1):
        prod *= 1 + Fraction(1, p ** j)
    bound = Fraction(3, 2) + q * factor * prod
    # outward-round endpoints to 12 decimals to keep reports readable
    scale = 10 ** 12
    bound = Interval(
        Fraction(math.floor(bound.lo * scale), scale),
        Fraction(math.ceil(bound.hi * scale), scale),
    )
    if bound.width >= Fraction(1, 4):
        raise QuadFormError("bound enclosure too wide to classify dyadic traces")
    return bound


def trace_below(w: Fraction, threshold: Threshold) -> bool:
    """Decide w < threshold; half-integral w never hits the irrational
    prime-power bound, so a tight enclosure always classifies."""
    if isinstance(threshold, Fraction):
        return w < threshold
    if w < threshold.lo:
        return True
    if w >= threshold.hi:
        return False
    raise QuadFormError(
        f"dyadic trace {w} falls inside the bound enclosure "
        f"[{threshold.lo}, {threshold.hi}]; increase precision"
    )


@dataclass(frozen=True)
class DeterminingSet:
    level: int
    weight: int
    threshold: Threshold
    forms: tuple[IndexForm, ...]

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, t: IndexForm):
        return t in self.forms

    def to_json(self) -> dict:
        obj = {
            "level": self.level,
            "weight": self.weight,
            "forms": [list(t.triple()) for t in self.forms],
        }
        if isinstance(self.threshold, Fraction):
            obj["threshold"] = {"exact": str(self.threshold)}
        else:
            obj["threshold"] = {
                "interval": [str(self.threshold.lo), str(self.threshold.hi)]
            }
        return obj


def enumerate_determining(
    p: int, i: int, k: int, threshold: Threshold | None = None
) -> DeterminingSet:
    """All reduced forms with dyadic trace strictly below the cutoff,
    in lexicographic (a, b, c) order.  Loop ranges follow from the
    cutoff: for a reduced form w >= 3a/4, and w = (a + c - b)/2 pins c."""
    if threshold is None:
        threshold = determining_bound(p, i, k)
    upper = threshold if isinstance(threshold, Fraction) else threshold.hi
    forms = []
    a = 2
    while Fraction(3 * a, 4) < upper:
        for b in range(0, a // 2 + 1):
            c = a
            while Fraction(a + c - b, 2) < upper:
                t = IndexForm(a, b, c)
                if trace_below(dyadic_trace(t), threshold):
                    forms.append(t)
                c += 2
        a += 2
    forms.sort()
    return DeterminingSet(p ** i, k, threshold, tuple(forms))


def enumerate_determining_level(
    level: int, k: int, threshold: Threshold | None = None
) -> DeterminingSet:
    p, i = _check_prime_power(level)
    return enumerate_determining(p, i, k, threshold)


def unimodular_matrices(entry_bound: int):
    """All u = (m, n, o, p) with entries in [-entry_bound, entry_bound]
    and det u = +-1."""
    rng = range(-entry_bound, entry_bound + 1)
    for m, n, o, p in itertools.product(rng, repeat=4):
        if m * p - n * o in (1, -1):
            yield (m, n, o, p)
