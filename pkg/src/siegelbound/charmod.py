"""Dirichlet characters mod N with values in Q(zeta_n).

Characters are realized as complete lookup tables on the unit group,
built by multiplicative closure from generator assignments.  Closure
doubles as a consistency check: conflicting assignments and value
orders that do not divide element orders are detected during
construction.  Evaluation at a non-unit raises; the pipeline only ever
evaluates characters at determinants that are provably units, so a
non-unit argument signals a bug upstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactfield import CycNum


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class DirichletChar:
    modulus: int
    order_root: int
    table: dict[int, CycNum] = field(hash=False)
    label: str = ""

    def __call__(self, a: int) -> CycNum:
        return char_eval(self, a)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.table.values())

    def units(self) -> list[int]:
        return sorted(self.table)


def _unit_residues(N: int) -> list[int]:
    return [a for a in range(1, N + 1) if math.gcd(a, N) == 1]


def trivial_char(N: int, label: str = "trivial") -> DirichletChar:
    table = {a: CycNum.one() for a in _unit_residues(N)}
    return DirichletChar(N, 1, table, label)


def char_from_generators(
    N: int,
    assignments: list[tuple[int, CycNum]],
    order_root: int | None = None,
    label: str = "",
) -> DirichletChar:
    """Build the full character table from values on generators of
    (Z/NZ)^x, by multiplicative closure."""
    units = set(_unit_residues(N))
    table: dict[int, CycNum] = {1 % N if N > 1 else 1: CycNum.one()}
    seeds: dict[int, CycNum] = {}
    zeta_order = 1
    for residue, value in assignments:
        r = residue % N
        if r not in units:
            raise CharacterError(f"{residue} is not a unit mod {N}")
        if r in seeds and seeds[r] != value:
            raise CharacterError(f"conflicting assignments at residue {r}")
        seeds[r] = value
        zeta_order = math.lcm(zeta_order, value.n)
        if r in table and table[r] != value:
            raise CharacterError(f"conflicting assignments at residue {r}")
        table[r] = value

    frontier = list(table)
    while frontier:
        a = frontier.pop()
        for g, val in seeds.items():
            b = (a * g) % N
            prod = table[a] * val
            if b in table:
                if table[b] != prod:
                    raise CharacterError(
                        f"assignments are inconsistent: two values at residue {b}"
                    )
            else:
                table[b] = prod
                frontier.append(b)

    if set(table) != units:
        raise CharacterError(
            f"assigned residues do not generate (Z/{N}Z)^x "
            f"(reached {len(table)} of {len(units)} units)"
        )
    for a, v in table.items():
        if v ** _multiplicative_order(a, N) != 1:
            raise CharacterError(
                f"value at {a} is not a root of unity of order dividing ord({a})"
            )
    return DirichletChar(N, order_root or zeta_order, table, label)


def _multiplicative_order(a: int, N: int) -> int:
    if N == 1:
        return 1
    x = a % N
    order = 1
    while x != 1:
        x = (x * a) % N
        order += 1
        if order > N:
            raise CharacterError(f"{a} is not a unit mod {N}")
    return order


def char_eval(chi: DirichletChar, a: int) -> CycNum:
    r = a % chi.modulus if chi.modulus > 1 else 1
    if r not in chi.table:
        raise CharacterError(f"{a} is not a unit mod {chi.modulus}")
    return chi.table[r]


def char_extend(chi: DirichletChar, m: int) -> DirichletChar:
    """Extend to modulus N*m: same values on residues coprime to N*m,
    undefined elsewhere."""
    if m < 1:
        raise CharacterError("extension factor must be positive")
    N = chi.modulus * m
    table = {a: char_eval(chi, a) for a in _unit_residues(N)}
    return DirichletChar(N, chi.order_root, table, chi.label)


def char_order(chi: DirichletChar) -> int:
    powers = {a: CycNum.one() for a in chi.table}
    for r in range(1, len(chi.table) + 1):
        powers = {a: powers[a] * v for a, v in chi.table.items()}
        if all(v == 1 for v in powers.values()):
            return r
    raise CharacterError("character order exceeds the unit group order")
