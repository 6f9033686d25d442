"""Representation counts v(j, s, t) and the symbolic q-expansion of a
restricted Siegel form.

Two independent algorithms compute v(j, s, t): `vcount` enumerates the
candidate index matrices v directly inside a provable box and reduces
each, while `vcount_oracle` walks the unimodular orbit of t the way
the original search program did, with entry bounds derived from
positivity instead of a fixed cutoff.  Each serves as the oracle for
the other in the test suite.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import CycNum
from .quadform import DeterminingSet, IndexForm, SendingMatrix, inner, reduce


@dataclass
class LinForm:
    """A linear form in the unknown coefficients a0(t), keyed by
    reduced forms."""

    terms: dict[IndexForm, CycNum] = field(default_factory=dict)

    def add_term(self, t: IndexForm, coeff) -> None:
        if not isinstance(coeff, CycNum):
            coeff = CycNum.rational(coeff)
        total = self.terms.get(t, CycNum.zero()) + coeff
        if total.is_zero():
            self.terms.pop(t, None)
        else:
            self.terms[t] = total

    def __add__(self, other: "LinForm") -> "LinForm":
        out = LinForm(dict(self.terms))
        for t, c in other.terms.items():
            out.add_term(t, c)
        return out

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + other.scale(CycNum.rational(-1))

    def scale(self, c: CycNum) -> "LinForm":
        if c.is_zero():
            return LinForm()
        return LinForm({t: v * c for t, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t: IndexForm) -> CycNum:
        return self.terms.get(t, CycNum.zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinForm):
            return NotImplemented
        return (self - other).is_zero()

    def proportional_to(self, other: "LinForm") -> bool:
        """True if one is a nonzero scalar multiple of the other (or
        both are zero)."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        t0 = next(iter(self.terms))
        ratio = self.terms[t0] / other.terms[t0]
        return all(self.terms[t] == other.terms[t] * ratio for t in self.terms)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for t in sorted(self.terms):
            c = self.terms[t]
            if c == 1:
                parts.append(f"a0{t}")
            else:
                parts.append(f"({c})*a0{t}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            [list(t.triple()), self.terms[t].to_json()] for t in sorted(self.terms)
        ]

    @staticmethod
    def from_json(obj: list) -> "LinForm":
        lf = LinForm()
        for triple, coeff in obj:
            lf.add_term(IndexForm(*triple), CycNum.from_json(coeff))
        return lf


@dataclass
class SymbolicQExp:
    jmax: int
    coeffs: dict[int, LinForm] = field(default_factory=dict)

    def coefficient(self, j: int) -> LinForm:
        return self.coeffs.get(j, LinForm())

    def to_json(self) -> dict:
        return {
            "jmax": self.jmax,
            "coeffs": {str(j): lf.to_json() for j, lf in sorted(self.coeffs.items())},
        }


def _candidate_box(j: int, s: SendingMatrix) -> Fraction:
    """Bound on a + c for positive definite v with <v, s> = j, from
    lambda_min(s) >= det(s)/tr(s)."""
    return Fraction(2 * j * s.trace(), s.det())


def candidate_forms(j: int, s: SendingMatrix):
    """All positive definite even-encoded v with inner(v, s) = j."""
    top = _candidate_box(j, s)
    a = 2
    while a <= top:
        c = 2
        while a + c <= top:
            bmax = math.isqrt(a * c - 1)
            for b in range(-bmax, bmax + 1):
                v = IndexForm(a, b, c)
                if inner(v, s) == j:
                    yield v
            c += 2
        a += 2


def vcount(j: int, s: SendingMatrix, t: IndexForm) -> int:
    """Number of forms in the class of t pairing to j against s, by
    direct enumeration of candidates followed by reduction."""
    tred = reduce(t)
    return sum(1 for v in candidate_forms(j, s) if reduce(v) == tred)


def vcount_all(j: int, s: SendingMatrix) -> dict[IndexForm, int]:
    """Counts for every class at once; keys are reduced forms."""
    out: dict[IndexForm, int] = {}
    for v in candidate_forms(j, s):
        r = reduce(v)
        out[r] = out.get(r, 0) + 1
    return out


def oracle_entry_bound(j: int, s: SendingMatrix, t: IndexForm) -> int:
    """Entry bound for unimodular u with <u^T t u, s> = j.

    The diagonal entries of u^T t u are Q_t of the columns of u, and
    Q_t(x, y) >= (det t / tr t)(x^2 + y^2) for a positive form, while
    the trace of any counted v is at most j tr(s)/det(s).  So every
    entry x of u satisfies x^2 <= j tr(s) tr(t) / (det(s) det(t))."""
    tr_t = Fraction(t.a + t.c, 2)
    det_t = Fraction(t.det4(), 4)
    budget = Fraction(j * s.trace(), s.det()) * tr_t / det_t
    return math.isqrt(math.floor(budget))


def vcount_oracle(j: int, s: SendingMatrix, t: IndexForm) -> int:
    """Same count via the orbit: enumerate unimodular u, collect the
    distinct images u^T t u that pair to j."""
    bound = oracle_entry_bound(j, s, t)
    seen = set()
    rng = range(-bound, bound + 1)
    for m, n, o, p in itertools.product(rng, repeat=4):
        if m * p - n * o not in (1, -1):
            continue
        v = t.transform(m, n, o, p)
        if inner(v, s) == j:
            seen.add(v.triple())
    return len(seen)


def default_jmax(det: DeterminingSet, s: SendingMatrix) -> int:
    """Large enough that every determining variable can appear."""
    return 1 + max(math.ceil(inner(t, s)) for t in det.forms)


def _worker_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    return max(1, int(os.environ.get("SIEGEL_RESTRICT_THREADS", "1")))


def _vcount_job(args: tuple[int, SendingMatrix]) -> dict[IndexForm, int]:
    return vcount_all(*args)


def restrict_expansion(
    det: DeterminingSet,
    s: SendingMatrix,
    jmax: int | None = None,
    threads: int | None = None,
) -> SymbolicQExp:
    """Symbolic q-expansion of the restricted form: the coefficient of
    q^j is sum_t v(j, s, t) x_t over the determining set.

    Per-j counts are independent; with threads > 1 (default from the
    SIEGEL_RESTRICT_THREADS environment variable) they run in a worker
    pool, merged back in q-exponent order so output is deterministic.
    """
    if jmax is None:
        jmax = default_jmax(det, s)
    workers = _worker_count(threads)
    js = list(range(1, jmax + 1))
    if workers > 1 and len(js) > 1:
        with concurrent.futures.ProcessPoolExecutor(workers) as pool:
            counts = list(pool.map(_vcount_job, [(j, s) for j in js]))
    else:
        counts = [vcount_all(j, s) for j in js]
    exp = SymbolicQExp(jmax)
    members = set(det.forms)
    for j, per_class in zip(js, counts):
        lf = LinForm()
        for r, count in sorted(per_class.items()):
            if r in members:
                lf.add_term(r, count)
        if not lf.is_zero():
            exp.coeffs[j] = lf
    return exp
