"""Scalar action of the Atkin-Lehner operators on restricted forms,
with nebentypus.

W_l factors as an SL2(Z) matrix [[x, y], [l'z, lw]] times diag(l, 1).
The scalar it produces, l^k chi(l' z^2), depends on z only through
z mod l, so the decomposition is normalized by y = 1 (mod l): then
l' z = -1 (mod l) is forced and the scalar is representative
independent, which is what the worked derivations use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .charmod import DirichletChar, char_eval
from .exactfield import CycNum
from .quadform import SendingMatrix


class OperatorError(ValueError):
    pass


class Provenance(str, Enum):
    WL = "WL"
    WLPRIME = "WLPRIME"
    FRICKE = "FRICKE"


@dataclass(frozen=True)
class ALContext:
    l: int
    lprime: int
    k: int
    chi: DirichletChar
    s: SendingMatrix

    def __post_init__(self):
        if math.gcd(self.l, self.lprime) != 1:
            raise OperatorError(f"l = {self.l} and l' = {self.lprime} share a factor")
        if self.s.det() != self.lprime:
            raise OperatorError(
                f"det(s) = {self.s.det()} does not match l' = {self.lprime}"
            )
        if self.chi.modulus != self.l:
            raise OperatorError(
                f"character modulus {self.chi.modulus} does not match level {self.l}"
            )


@dataclass(frozen=True)
class OperatorScalar:
    value: CycNum
    provenance: Provenance
    witness: tuple

    def __post_init__(self):
        if self.value.is_zero():
            raise OperatorError("operator scalar cannot vanish")

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "provenance": self.provenance.value,
            "witness": list(self.witness),
        }


def wl_decomposition(l: int, lprime: int) -> tuple[int, int, int, int]:
    """Integers (x, y, z, w) with x*l*w - y*lprime*z = 1, normalized by
    y = 1 and z the least positive solution of l'z = -1 (mod l)."""
    if math.gcd(l, lprime) != 1:
        raise OperatorError(f"gcd({l}, {lprime}) != 1")
    y = 1
    z = (-pow(lprime, -1, l)) % l
    if z == 0:
        z = l
    w = 1
    x = (1 + lprime * z * y) // l
    assert x * l * w - y * lprime * z == 1
    return (x, y, z, w)


def alternative_wl_decompositions(l: int, lprime: int, count: int = 3):
    """Further valid decompositions (same normalization class), used to
    test representative independence of the W_l scalar."""
    x0, y0, z0, w0 = wl_decomposition(l, lprime)
    out = []
    for t in range(count):
        z = z0 + t * l
        x = (1 + lprime * z * y0) // l
        assert x * l * w0 - y0 * lprime * z == 1
        out.append((x, y0, z, w0))
    return out


def al_scalar_wl(ctx: ALContext) -> OperatorScalar:
    """W_l phi_s^* f = l^k chi(l' z^2) phi_{ls}^*(f|Fricke-flip)."""
    x, y, z, w = wl_decomposition(ctx.l, ctx.lprime)
    arg = (ctx.lprime * z * z) % ctx.l
    if math.gcd(arg, ctx.l) != 1:
        raise OperatorError(f"l'z^2 = {arg} is not a unit mod {ctx.l}")
    value = CycNum.rational(Fraction(ctx.l) ** ctx.k) * char_eval(ctx.chi, arg)
    return OperatorScalar(value, Provenance.WL, (x, y, z, w))


def al_scalar_wlprime(ctx: ALContext) -> OperatorScalar:
    """phi_s^*(f) | W_l' = chi(det((1 - l lhat) s^-1)) phi_s^* f with
    l lhat = 1 (mod l'); the determinant equals (1 - l lhat)^2 / l'."""
    lhat = pow(ctx.l, -1, ctx.lprime) if ctx.lprime > 1 else 1
    arg_num = (1 - ctx.l * lhat) ** 2
    if arg_num % ctx.lprime != 0:
        raise OperatorError("(1 - l*lhat)^2 not divisible by l'")
    arg = (arg_num // ctx.lprime) % ctx.l
    if math.gcd(arg, ctx.l) != 1:
        raise OperatorError(f"determinant {arg} is not a unit mod {ctx.l}")
    return OperatorScalar(char_eval(ctx.chi, arg), Provenance.WLPRIME, (lhat,))


def fricke_factor(ctx: ALContext) -> OperatorScalar:
    """W_{l l'} phi_s^* f = (1/l)^k phi_{ls}^*(f|Fricke-flip)."""
    value = CycNum.rational(Fraction(1, ctx.l) ** ctx.k)
    return OperatorScalar(value, Provenance.FRICKE, ())


def fricke_combined_scalar(ctx: ALContext) -> CycNum:
    """Scalar c with W_{l l'} phi = c * W_l phi: eliminating the
    Fricke-flipped expansion between the W_l and W_{l l'} relations
    gives c = l^{-2k} chi^{-1}(l' z^2)."""
    wl = al_scalar_wl(ctx)
    fricke = fricke_factor(ctx)
    return fricke.value / wl.value
