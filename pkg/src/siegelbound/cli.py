"""Command line surface for the bound pipeline.

Subcommands mirror the pipeline stages: `determining` enumerates the
index forms, `vcount` evaluates one representation count, `restrict`
prints a symbolic restriction expansion, `al-scalar` evaluates operator
scalars, and `bound` runs the whole chain from a config file to a
BoundReport.

Exit codes: 0 success, 1 computation refusal (for example a nonzero
operator kernel), 2 usage or config error.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction

import click

from .charmod import CharacterError, trivial_char
from .exactfield import CycNum
from .ingest import (
    CheckedPlan,
    IngestError,
    load_character,
    load_config,
    report_lower_bound,
    validate_config,
)
from .linsys import (
    BoundReport,
    Constraint,
    KernelRefusal,
    LinSysError,
    RecipeKind,
    basis_match,
    kernel_vanishing,
    proportionality,
    solve_bound,
)
from .operators import (
    ALContext,
    OperatorError,
    al_scalar_wl,
    al_scalar_wlprime,
    fricke_combined_scalar,
    fricke_factor,
)
from .quadform import (
    IndexForm,
    QuadFormError,
    SendingMatrix,
    enumerate_determining_level,
)
from .restrict import restrict_expansion, vcount, vcount_oracle


# -- pipeline -----------------------------------------------------------


def _kernel_eigenvalue(plan: CheckedPlan, s: SendingMatrix, scalar) -> CycNum:
    """Eigenvalue for a kernel-vanishing recipe: explicit, or derived
    from the operator scalar acting on the restricted form."""
    if isinstance(scalar, CycNum):
        return scalar
    ctx = ALContext(plan.config.level, s.det(), plan.config.weight, plan.chi, s)
    if scalar in (None, "wlprime"):
        return al_scalar_wlprime(ctx).value
    if scalar == "fricke_combined":
        return fricke_combined_scalar(ctx)
    raise IngestError(f"unknown scalar spec {scalar!r}")


def recipe_constraints(plan: CheckedPlan, index: int) -> list[Constraint]:
    recipe = plan.config.recipes[index]
    cfg = plan.config
    jmax = recipe.jrange.stop - 1
    if recipe.kind is RecipeKind.PROPORTIONALITY:
        i1, i2 = recipe.s
        s1, s2 = cfg.sending_matrices[i1], cfg.sending_matrices[i2]
        exp1 = restrict_expansion(plan.det, s1, jmax)
        exp2 = restrict_expansion(plan.det, s2, jmax)
        c = _kernel_eigenvalue(plan, s2, recipe.scalar)
        origin = f"recipe {index} proportionality s{i1}/s{i2}"
        return proportionality(exp1, exp2, c, recipe.jrange, origin)
    s = cfg.sending_matrices[recipe.s]
    exp = restrict_expansion(plan.det, s, jmax)
    if recipe.kind is RecipeKind.KERNEL_VANISHING:
        op = plan.operators[recipe.operator].matrix()
        c = _kernel_eigenvalue(plan, s, recipe.scalar)
        origin = f"recipe {index} kernel {op.label} s{recipe.s}"
        return kernel_vanishing(exp, op, c, recipe.jrange, origin)
    basis = plan.bases[recipe.basis].forms
    origin = f"recipe {index} basis s{recipe.s}"
    return basis_match(exp, basis, recipe.jrange, origin)


def execute_plan(plan: CheckedPlan) -> BoundReport:
    """Full chain: constraints from every recipe, exact row reduction,
    bound report with the pass-through lower bound."""
    constraints: list[Constraint] = []
    for i in range(len(plan.config.recipes)):
        constraints.extend(recipe_constraints(plan, i))
    report = solve_bound(
        constraints,
        plan.det,
        plan.chi.label or "trivial",
        report_lower_bound(plan.config),
    )
    ref = plan.config.reference_bound
    if ref is not None and report.upper_bound < ref:
        report.notes.append(
            f"upper bound {report.upper_bound} is sharper than the "
            f"declared reference bound {ref}"
        )
    return report


# -- helpers ------------------------------------------------------------


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (KernelRefusal, LinSysError) as e:
            click.echo(f"refused: {e}", err=True)
            sys.exit(1)
        except (IngestError, QuadFormError, OperatorError, CharacterError,
                ValueError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)

    return wrapper


def _parse_triple(text: str, what: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise IngestError(f"{what} must be three comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise IngestError(f"{what} must be three comma-separated integers")


def _threshold_str(threshold) -> str:
    if isinstance(threshold, Fraction):
        return str(threshold)
    return f"[{float(threshold.lo):.9f}, {float(threshold.hi):.9f}]"


output_option = click.option(
    "--output", type=click.Choice(["text", "json"]), default="text",
    help="Output format.",
)


@click.group()
def main():
    """Exact dimension bounds for genus-2 cusp form spaces via
    restriction to elliptic modular forms."""


@main.command()
@click.option("--level", type=int, required=True, help="Prime power p^i.")
@click.option("--weight", type=int, required=True, help="Weight k.")
@click.option("--threshold", default=None,
              help="Rational override of the dyadic-trace cutoff.")
@output_option
@_guarded
def determining(level, weight, threshold, output):
    """Enumerate the determining set of index forms."""
    override = Fraction(threshold) if threshold is not None else None
    det = enumerate_determining_level(level, weight, override)
    if output == "json":
        _echo_json(det.to_json())
        return
    click.echo(f"level {det.level} weight {det.weight}: {len(det)} forms")
    click.echo(f"threshold: {_threshold_str(det.threshold)}")
    for t in det:
        click.echo(str(t))


@main.command(name="vcount")
@click.option("--j", type=int, required=True, help="Target exponent.")
@click.option("--s", "s_text", required=True, help="Sending matrix s1,s2,s4.")
@click.option("--t", "t_text", required=True, help="Index form a,b,c.")
@click.option("--algorithm", type=click.Choice(["direct", "orbit"]),
              default="direct", help="Counting algorithm.")
@output_option
@_guarded
def vcount_cmd(j, s_text, t_text, algorithm, output):
    """Count class members of t pairing to j against s."""
    s = SendingMatrix(*_parse_triple(s_text, "--s"))
    t = IndexForm(*_parse_triple(t_text, "--t"))
    count = (vcount if algorithm == "direct" else vcount_oracle)(j, s, t)
    if output == "json":
        _echo_json({"j": j, "s": [s.s1, s.s2, s.s4], "t": list(t.triple()),
                    "algorithm": algorithm, "count": count})
    else:
        click.echo(str(count))


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(), help="Config file.")
@click.option("--s", "s_index", type=int, required=True,
              help="Index into the config's sending matrices.")
@click.option("--jmax", type=int, default=None, help="Expansion cutoff.")
@output_option
@_guarded
def restrict(config_path, s_index, jmax, output):
    """Print the symbolic q-expansion of a restriction."""
    plan = validate_config(load_config(config_path))
    if not 0 <= s_index < len(plan.config.sending_matrices):
        raise IngestError(f"sending matrix index {s_index} out of range")
    s = plan.sending_matrix(s_index)
    exp = restrict_expansion(plan.det, s, jmax)
    if output == "json":
        _echo_json(exp.to_json())
        return
    click.echo(f"restriction along s = {s}, up to q^{exp.jmax}:")
    for j in sorted(exp.coeffs):
        click.echo(f"({exp.coeffs[j]}) q^{j}")


@main.command(name="al-scalar")
@click.option("--level", type=int, required=True, help="Level l.")
@click.option("--weight", type=int, required=True, help="Weight k.")
@click.option("--char", "char_path", default="trivial",
              help="Character file, or 'trivial'.")
@click.option("--s", "s_text", required=True, help="Sending matrix s1,s2,s4.")
@click.option("--which",
              type=click.Choice(["wl", "wlprime", "fricke", "fricke-combined"]),
              required=True, help="Which operator scalar.")
@output_option
@_guarded
def al_scalar(level, weight, char_path, s_text, which, output):
    """Evaluate an operator scalar on a restricted form."""
    s = SendingMatrix(*_parse_triple(s_text, "--s"))
    chi = (trivial_char(level) if char_path == "trivial"
           else load_character(char_path).char())
    ctx = ALContext(level, s.det(), weight, chi, s)
    if which == "fricke-combined":
        value = fricke_combined_scalar(ctx)
        payload = {"value": value.to_json(), "provenance": "FRICKE/WL"}
        text = str(value)
    else:
        scalar = {"wl": al_scalar_wl, "wlprime": al_scalar_wlprime,
                  "fricke": fricke_factor}[which](ctx)
        payload = scalar.to_json()
        text = f"{scalar.value}  (witness {list(scalar.witness)})"
    if output == "json":
        _echo_json(payload)
    else:
        click.echo(text)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(), help="Config file.")
@output_option
@_guarded
def bound(config_path, output):
    """Run the full pipeline and report the dimension bound."""
    plan = validate_config(load_config(config_path))
    report = execute_plan(plan)
    if output == "json":
        _echo_json(report.to_json())
        return
    click.echo(f"level {report.level} weight {report.weight} "
               f"character {report.character}")
    click.echo(f"variables: {report.num_vars}  rank: {report.rank}  "
               f"upper bound: {report.upper_bound}")
    if report.lower_bound is not None:
        click.echo(f"lower bound: {report.lower_bound}")
    for note in report.notes:
        click.echo(f"note: {note}")
    click.echo("equations:")
    for eq in report.equations:
        click.echo(f"  [{eq.origin}] {eq.lhs} = 0")


if __name__ == "__main__":
    main()
