"""Constraint generation and exact linear algebra over Q(zeta_n).

Constraints come from three recipe kinds: kernel-vanishing (the
restricted form sits in a trivial eigenspace of an Atkin-Lehner
matrix, so all its coefficients vanish), basis-match (expansion
coefficients beyond the pivots must agree with the linear combination
read off at the pivots), and proportionality between two expansions.
The assembled homogeneous system is row-reduced exactly; the upper
bound is the variable count minus the rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .exactfield import CycNum
from .quadform import DeterminingSet, IndexForm
from .restrict import LinForm, SymbolicQExp


class LinSysError(ValueError):
    pass


class KernelRefusal(Exception):
    """Raised when an operator eigenspace is not zero-dimensional, so
    kernel-vanishing constraints would overstate what is proven."""

    def __init__(self, label: str, nullity: int):
        super().__init__(f"{label}: eigenspace has dimension {nullity}, refusing")
        self.label = label
        self.nullity = nullity


@dataclass
class BasisForm:
    label: str
    level: int
    weight: int
    coeffs: dict[int, CycNum]
    jmax: int

    def coefficient(self, j: int) -> CycNum:
        return self.coeffs.get(j, CycNum.zero())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())


@dataclass
class OperatorMatrix:
    label: str
    entries: list[list[CycNum]]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.dim:
                raise LinSysError(f"operator {self.label!r} is not square")


@dataclass
class Constraint:
    lhs: LinForm
    origin: str

    def normalized(self) -> LinForm:
        """Scale so the leading (lexicographically first) coefficient
        is 1; used for deduplication up to scalar."""
        if self.lhs.is_zero():
            return LinForm()
        lead = self.lhs.terms[min(self.lhs.terms)]
        return self.lhs.scale(lead.inverse())


class RecipeKind(str, Enum):
    KERNEL_VANISHING = "KERNEL_VANISHING"
    BASIS_MATCH = "BASIS_MATCH"
    PROPORTIONALITY = "PROPORTIONALITY"


# -- exact row reduction ------------------------------------------------


def rref(matrix: list[list[CycNum]]) -> tuple[list[list[CycNum]], int, list[int]]:
    """Reduced row echelon form over Q(zeta_n) with exact arithmetic.
    Returns (reduced rows, rank, pivot column indices)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], 0, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next(
            (i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None
        )
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, len(pivots), pivots


def nullity(matrix: list[list[CycNum]]) -> int:
    if not matrix:
        return 0
    _, rank, _ = rref(matrix)
    return len(matrix[0]) - rank


# -- constraint generators ----------------------------------------------


def kernel_vanishing(
    exp: SymbolicQExp,
    operator: OperatorMatrix,
    c: CycNum,
    jrange: range,
    origin: str = "kernel",
) -> list[Constraint]:
    """If ker(A - cI) = 0 the restricted form vanishes identically and
    every expansion coefficient is a constraint.  A nonzero kernel is a
    structured refusal, never a weaker claim."""
    shifted = [
        [
            operator.entries[i][j] - (c if i == j else CycNum.zero())
            for j in range(operator.dim)
        ]
        for i in range(operator.dim)
    ]
    dim_null = nullity(shifted)
    if dim_null > 0:
        raise KernelRefusal(origin, dim_null)
    out = []
    for j in jrange:
        lhs = exp.coefficient(j)
        if not lhs.is_zero():
            out.append(Constraint(lhs, f"{origin} q^{j}"))
    return out


def echelonize_basis(
    basis: list[BasisForm], jrange: range
) -> tuple[list[dict[int, CycNum]], list[int]]:
    """Echelonize q-expansions over the exponents of jrange; returns
    echelon vectors (as j -> coefficient maps) and their pivot
    exponents."""
    vectors = [[f.coefficient(j) for j in jrange] for f in basis]
    reduced, rank, pivot_cols = rref(vectors)
    if rank < len(basis):
        raise LinSysError("basis is degenerate within the comparison range")
    exponents = list(jrange)
    echelon = [
        {exponents[idx]: row[idx] for idx in range(len(exponents)) if not row[idx].is_zero()}
        for row in reduced[:rank]
    ]
    pivots = [exponents[c] for c in pivot_cols]
    return echelon, pivots


def basis_match(
    exp: SymbolicQExp,
    basis: list[BasisForm],
    jrange: range,
    origin: str = "basis-match",
) -> list[Constraint]:
    """Express the restricted form in the echelonized basis: the
    combination coefficients are read off at the pivot exponents (as
    linear forms in the unknowns), and every non-pivot coefficient
    yields one constraint."""
    for f in basis:
        if f.jmax < jrange.stop - 1:
            raise LinSysError(
                f"basis form {f.label!r} known only to q^{f.jmax}, "
                f"but comparison runs to q^{jrange.stop - 1}"
            )
    if basis:
        echelon, pivots = echelonize_basis(basis, jrange)
    else:
        echelon, pivots = [], []
    lambdas = [exp.coefficient(p) for p in pivots]
    out = []
    for j in jrange:
        if j in pivots:
            continue
        lhs = exp.coefficient(j)
        for lam, vec in zip(lambdas, echelon):
            bj = vec.get(j, CycNum.zero())
            if not bj.is_zero():
                lhs = lhs - lam.scale(bj)
        if not lhs.is_zero():
            out.append(Constraint(lhs, f"{origin} q^{j}"))
    return out


def proportionality(
    exp1: SymbolicQExp,
    exp2: SymbolicQExp,
    c: CycNum,
    jrange: range,
    origin: str = "proportionality",
) -> list[Constraint]:
    """exp1 - c * exp2 = 0 coefficientwise, dropping trivial rows."""
    out = []
    for j in jrange:
        lhs = exp1.coefficient(j) - exp2.coefficient(j).scale(c)
        if not lhs.is_zero():
            out.append(Constraint(lhs, f"{origin} q^{j}"))
    return out


# -- bound report -------------------------------------------------------


@dataclass
class BoundReport:
    level: int
    weight: int
    character: str
    num_vars: int
    rank: int
    upper_bound: int
    equations: list[Constraint]
    variables: list[IndexForm]
    lower_bound: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        obj = {
            "level": self.level,
            "weight": self.weight,
            "character": self.character,
            "num_vars": self.num_vars,
            "rank": self.rank,
            "upper_bound": self.upper_bound,
            "variables": [list(t.triple()) for t in self.variables],
            "equations": [eq.lhs.to_json() for eq in self.equations],
            "origins": [eq.origin for eq in self.equations],
        }
        if self.lower_bound is not None:
            obj["lower_bound"] = self.lower_bound
        if self.notes:
            obj["notes"] = self.notes
        return obj


def constraint_matrix(
    constraints: list[Constraint], det: DeterminingSet
) -> list[list[CycNum]]:
    columns = list(det.forms)
    known = set(columns)
    for eq in constraints:
        stray = set(eq.lhs.terms) - known
        if stray:
            raise LinSysError(
                f"constraint {eq.origin!r} mentions forms outside the "
                f"determining set: {sorted(map(str, stray))}"
            )
    return [[eq.lhs.coefficient(t) for t in columns] for eq in constraints]


def dedupe_constraints(constraints: list[Constraint]) -> list[Constraint]:
    """Collapse constraints equal up to a nonzero scalar."""
    seen: list[tuple[Constraint, LinForm]] = []
    out = []
    for eq in constraints:
        if eq.lhs.is_zero():
            continue
        norm = eq.normalized()
        if any(norm == prev for _, prev in seen):
            continue
        seen.append((eq, norm))
        out.append(eq)
    return out


def solve_bound(
    constraints: list[Constraint],
    det: DeterminingSet,
    character_label: str = "trivial",
    lower_bound: int | None = None,
) -> BoundReport:
    deduped = dedupe_constraints(constraints)
    matrix = constraint_matrix(deduped, det)
    rank = rref(matrix)[1] if matrix else 0
    num_vars = len(det.forms)
    report = BoundReport(
        level=det.level,
        weight=det.weight,
        character=character_label,
        num_vars=num_vars,
        rank=rank,
        upper_bound=num_vars - rank,
        equations=deduped,
        variables=list(det.forms),
        lower_bound=lower_bound,
    )
    if lower_bound is not None and lower_bound > report.upper_bound:
        report.notes.append(
            f"inconsistent: lower bound {lower_bound} exceeds upper bound "
            f"{report.upper_bound}"
        )
    return report
