"""File formats for externally computed data: characters, cusp form
basis q-expansions, operator matrices, and the bound-computation config
that ties them to constraint recipes.

Everything is JSON with all numbers encoded as strings, so files round
trip bit-exactly.  Each format has a schema shipped in-package; loading
validates against it first, then rebuilds the exact objects.  File
references inside a config resolve relative to the config file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .charmod import DirichletChar, char_from_generators, trivial_char
from .exactfield import CycNum
from .linsys import BasisForm, OperatorMatrix, RecipeKind
from .quadform import (
    DeterminingSet,
    SendingMatrix,
    Threshold,
    enumerate_determining_level,
)


class IngestError(ValueError):
    pass


@lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    text = resources.files("siegelbound.schemas").joinpath(name).read_text()
    return json.loads(text)


def _load_validated(path: Path, schema_name: str) -> dict:
    try:
        obj = json.loads(path.read_text())
    except FileNotFoundError:
        raise IngestError(f"{path}: file not found")
    except json.JSONDecodeError as e:
        raise IngestError(f"{path}: not valid JSON ({e})")
    try:
        jsonschema.validate(obj, _schema(schema_name))
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise IngestError(f"{path}: at {location}: {e.message}")
    return obj


def dump_json(obj: dict) -> str:
    """Canonical serialization; dumpers and fixtures both use it, so
    serialize(load(x)) is byte-identical."""
    return json.dumps(obj, indent=2) + "\n"


# -- characters ---------------------------------------------------------


@dataclass
class CharacterFile:
    modulus: int
    zeta_order: int
    generators: list[tuple[int, CycNum]]
    label: str
    source: str | None = None

    def char(self) -> DirichletChar:
        return char_from_generators(
            self.modulus, self.generators, self.zeta_order, self.label
        )

    def to_json(self) -> dict:
        obj = {
            "modulus": self.modulus,
            "zeta_order": self.zeta_order,
            "generators": [[r, v.to_json()] for r, v in self.generators],
            "label": self.label,
        }
        if self.source is not None:
            obj["source"] = self.source
        return obj


def load_character(path: str | Path) -> CharacterFile:
    path = Path(path)
    obj = _load_validated(path, "character.schema.json")
    generators = []
    for r, v in obj["generators"]:
        try:
            generators.append((r, CycNum.from_json(v)))
        except ValueError as e:
            raise IngestError(f"{path}: generator at residue {r}: {e}")
    cf = CharacterFile(
        obj["modulus"], obj["zeta_order"], generators, obj["label"], obj.get("source")
    )
    cf.char()  # fail on inconsistent assignments now, not at use time
    return cf


# -- bases --------------------------------------------------------------


@dataclass
class BasisFile:
    level: int
    weight: int
    character: str
    jmax: int
    forms: list[BasisForm]
    source: str | None = None

    def to_json(self) -> dict:
        obj = {
            "level": self.level,
            "weight": self.weight,
            "character": self.character,
            "jmax": self.jmax,
            "forms": [
                {
                    "label": f.label,
                    "coeffs": {str(j): c.to_json() for j, c in sorted(f.coeffs.items())},
                }
                for f in self.forms
            ],
        }
        if self.source is not None:
            obj["source"] = self.source
        return obj


def load_basis(path: str | Path) -> BasisFile:
    path = Path(path)
    obj = _load_validated(path, "basis.schema.json")
    forms = []
    for entry in obj["forms"]:
        coeffs = {}
        for j, c in entry["coeffs"].items():
            try:
                coeffs[int(j)] = CycNum.from_json(c)
            except ValueError as e:
                raise IngestError(f"{path}: form {entry['label']!r} q^{j}: {e}")
        f = BasisForm(entry["label"], obj["level"], obj["weight"], coeffs, obj["jmax"])
        if f.is_zero():
            raise IngestError(f"{path}: form {entry['label']!r} is identically zero")
        if max(coeffs, default=0) > obj["jmax"]:
            raise IngestError(
                f"{path}: form {entry['label']!r} has coefficients past jmax"
            )
        forms.append(f)
    return BasisFile(
        obj["level"], obj["weight"], obj["character"], obj["jmax"], forms,
        obj.get("source"),
    )


# -- operators ----------------------------------------------------------


@dataclass
class OperatorFile:
    label: str
    entries: list[list[CycNum]]
    level: int | None = None
    weight: int | None = None
    source: str | None = None

    def matrix(self) -> OperatorMatrix:
        return OperatorMatrix(self.label, self.entries)

    def to_json(self) -> dict:
        obj: dict = {"label": self.label}
        if self.level is not None:
            obj["level"] = self.level
        if self.weight is not None:
            obj["weight"] = self.weight
        obj["entries"] = [[c.to_json() for c in row] for row in self.entries]
        if self.source is not None:
            obj["source"] = self.source
        return obj


def load_operator(path: str | Path) -> OperatorFile:
    path = Path(path)
    obj = _load_validated(path, "operator.schema.json")
    entries = []
    for i, row in enumerate(obj["entries"]):
        out_row = []
        for j, c in enumerate(row):
            try:
                out_row.append(CycNum.from_json(c))
            except ValueError as e:
                raise IngestError(f"{path}: entry ({i}, {j}): {e}")
        entries.append(out_row)
    for i, row in enumerate(entries):
        if len(row) != len(entries):
            raise IngestError(
                f"{path}: row {i} has {len(row)} entries, expected {len(entries)}"
            )
    of = OperatorFile(
        obj["label"], entries, obj.get("level"), obj.get("weight"), obj.get("source")
    )
    of.matrix()
    return of


# -- configs ------------------------------------------------------------


@dataclass
class ConstraintRecipe:
    kind: RecipeKind
    s: int | tuple[int, int]
    jrange: range
    operator: str | None = None
    basis: str | None = None
    scalar: str | CycNum | None = None

    def to_json(self) -> dict:
        obj: dict = {
            "kind": self.kind.value,
            "s": list(self.s) if isinstance(self.s, tuple) else self.s,
            "jrange": [self.jrange.start, self.jrange.stop - 1],
        }
        if self.operator is not None:
            obj["operator"] = self.operator
        if self.basis is not None:
            obj["basis"] = self.basis
        if self.scalar is not None:
            obj["scalar"] = (
                self.scalar if isinstance(self.scalar, str) else self.scalar.to_json()
            )
        return obj


@dataclass
class ProjectConfig:
    level: int
    weight: int
    character: str
    sending_matrices: list[SendingMatrix]
    recipes: list[ConstraintRecipe]
    jmax: int | None = None
    threshold: Fraction | None = None
    classical_dim: int | None = None
    reference_bound: int | None = None
    source: str | None = None
    path: Path | None = None

    def to_json(self) -> dict:
        obj: dict = {
            "level": self.level,
            "weight": self.weight,
            "character": self.character,
            "sending_matrices": [[s.s1, s.s2, s.s4] for s in self.sending_matrices],
            "recipes": [r.to_json() for r in self.recipes],
        }
        if self.jmax is not None:
            obj["jmax"] = self.jmax
        if self.threshold is not None:
            obj["threshold"] = str(self.threshold)
        if self.classical_dim is not None:
            obj["classical_dim"] = self.classical_dim
        if self.reference_bound is not None:
            obj["reference_bound"] = self.reference_bound
        if self.source is not None:
            obj["source"] = self.source
        return obj


def load_config(path: str | Path) -> ProjectConfig:
    path = Path(path)
    obj = _load_validated(path, "config.schema.json")
    recipes = []
    for i, r in enumerate(obj["recipes"]):
        lo, hi = r["jrange"]
        if hi < lo:
            raise IngestError(f"{path}: recipe {i}: empty jrange [{lo}, {hi}]")
        s = tuple(r["s"]) if isinstance(r["s"], list) else r["s"]
        scalar = r.get("scalar")
        if isinstance(scalar, dict):
            scalar = CycNum.from_json(scalar)
        recipes.append(
            ConstraintRecipe(
                RecipeKind(r["kind"]), s, range(lo, hi + 1),
                r.get("operator"), r.get("basis"), scalar,
            )
        )
    threshold = Fraction(obj["threshold"]) if "threshold" in obj else None
    return ProjectConfig(
        level=obj["level"],
        weight=obj["weight"],
        character=obj["character"],
        sending_matrices=[SendingMatrix(*m) for m in obj["sending_matrices"]],
        recipes=recipes,
        jmax=obj.get("jmax"),
        threshold=threshold,
        classical_dim=obj.get("classical_dim"),
        reference_bound=obj.get("reference_bound"),
        source=obj.get("source"),
        path=path,
    )


@dataclass
class CheckedPlan:
    """A config with every cross-reference resolved and validated,
    ready to execute."""

    config: ProjectConfig
    chi: DirichletChar
    det: DeterminingSet
    bases: dict[str, BasisFile] = field(default_factory=dict)
    operators: dict[str, OperatorFile] = field(default_factory=dict)

    def sending_matrix(self, index: int) -> SendingMatrix:
        return self.config.sending_matrices[index]


def validate_config(cfg: ProjectConfig) -> CheckedPlan:
    """Cross-check the config and load everything it references.  All
    violations are collected and reported together, each with its
    location."""
    problems: list[str] = []
    base = cfg.path.parent if cfg.path is not None else Path(".")

    for i, s in enumerate(cfg.sending_matrices):
        if math.gcd(s.det(), cfg.level) != 1:
            problems.append(
                f"sending_matrices[{i}]: det {s.det()} shares a factor "
                f"with level {cfg.level}"
            )

    chi: DirichletChar
    if cfg.character == "trivial":
        chi = trivial_char(cfg.level)
    else:
        try:
            cf = load_character(base / cfg.character)
            chi = cf.char()
            if chi.modulus != cfg.level:
                problems.append(
                    f"character: modulus {chi.modulus} does not match "
                    f"level {cfg.level}"
                )
        except IngestError as e:
            problems.append(f"character: {e}")
            chi = trivial_char(cfg.level)

    bases: dict[str, BasisFile] = {}
    operators: dict[str, OperatorFile] = {}
    nmat = len(cfg.sending_matrices)
    for i, r in enumerate(cfg.recipes):
        where = f"recipes[{i}]"
        indices = r.s if isinstance(r.s, tuple) else (r.s,)
        for idx in indices:
            if not 0 <= idx < nmat:
                problems.append(f"{where}: sending matrix index {idx} out of range")
        if r.kind is RecipeKind.KERNEL_VANISHING:
            if r.operator is None:
                problems.append(f"{where}: KERNEL_VANISHING needs an operator file")
            if isinstance(r.s, tuple):
                problems.append(f"{where}: KERNEL_VANISHING takes a single s index")
        elif r.kind is RecipeKind.BASIS_MATCH:
            if r.basis is None:
                problems.append(f"{where}: BASIS_MATCH needs a basis file")
            if isinstance(r.s, tuple):
                problems.append(f"{where}: BASIS_MATCH takes a single s index")
        elif r.kind is RecipeKind.PROPORTIONALITY:
            if not isinstance(r.s, tuple):
                problems.append(f"{where}: PROPORTIONALITY takes a pair of s indices")
            if r.scalar is None:
                problems.append(f"{where}: PROPORTIONALITY needs a scalar")
        if r.operator is not None and r.operator not in operators:
            try:
                operators[r.operator] = load_operator(base / r.operator)
            except IngestError as e:
                problems.append(f"{where}: operator: {e}")
        if r.basis is not None and r.basis not in bases:
            try:
                bases[r.basis] = load_basis(base / r.basis)
            except IngestError as e:
                problems.append(f"{where}: basis: {e}")

    if problems:
        raise IngestError(
            f"config {cfg.path or '<memory>'} is invalid:\n  "
            + "\n  ".join(problems)
        )

    det = enumerate_determining_level(cfg.level, cfg.weight, cfg.threshold)
    return CheckedPlan(cfg, chi, det, bases, operators)


def report_lower_bound(cfg: ProjectConfig) -> int | None:
    """The classical dimension supplied with the config passes through
    as the lower bound; nothing is computed here."""
    return cfg.classical_dim
