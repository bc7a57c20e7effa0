"""Command-line driver for the verification suites and the point computations.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
errors (unknown suite, malformed points, points on no supported variety).
JSON output is deterministic: identical invocations write identical bytes.
"""

from __future__ import annotations

import json
import os
import time

import click

from . import __version__
from .action import (
    PointNotOnVariety,
    RationalPoint,
    LieSubalgebra,
    coinvariants,
    lr_action_horocycle,
    lr_action_sl2,
    stabilizer_subalgebra,
)
from .asymptotics import (
    bimodule_exponents,
    exponents_from_coinvariants,
    leading_exponent_check,
    matrix_coefficient_exponents,
)
from .lie import dual_rep, external_tensor, sym_power_rep
from .rees import (
    gr_derivations_check,
    peter_weyl_sl2,
    rees_build,
    rees_dimension_check,
    tau_check,
)
from .reports import CheckReport
from .vinberg import (
    asymp_diagram_check,
    parabolic_rank1_check,
    pw_vs_derivations_check,
    verify_dsl2_presentation,
    verify_dy_relation,
    verify_sl2_identities,
    vfiltration_check,
)

BOUND_ENV = "HOROCYCLE_BOUND"

# suite name -> (runner taking the effective bound, suite-specific default bound)
_SUITES = {
    "identities": (lambda bound: verify_sl2_identities(), None),
    "presentation": (lambda bound: verify_dsl2_presentation(), None),
    "dy": (lambda bound: verify_dy_relation(bound, bound), 4),
    "rees": (lambda bound: rees_dimension_check(bound), 6),
    "tau": (lambda bound: tau_check(peter_weyl_sl2(), rees_build(peter_weyl_sl2()), bound), 4),
    "grderv": (lambda bound: gr_derivations_check(bound, bound), 4),
    "pwfilt": (lambda bound: pw_vs_derivations_check(bound=bound), 6),
    "vfilt": (lambda bound: vfiltration_check(bound), 12),
    "asymp-diagram": (lambda bound: asymp_diagram_check(rep_bound=bound), 3),
    "parabolic": (lambda bound: parabolic_rank1_check(rep_bound=bound), 3),
}


def _effective_bound(suite: str, bound: int | None) -> int | None:
    default = _SUITES[suite][1]
    if default is None:
        return None
    if bound is not None:
        return bound
    env = os.environ.get(BOUND_ENV)
    if env is not None:
        return int(env)
    return default


def _emit(reports: list[CheckReport], command: str, parameters: dict, json_path, quiet: bool):
    overall = all(r.passed for r in reports)
    for r in reports:
        if not quiet:
            for item in r.items:
                status = "pass" if item.passed else "FAIL"
                click.echo(f"  [{status}] {item.name}: expected {item.expected}, got {item.got}")
        click.echo(r.summary())
    click.echo(f"overall: {'PASS' if overall else 'FAIL'}")
    if json_path:
        payload = {
            "tool": "horocycle",
            "version": __version__,
            "command": command,
            "parameters": {k: parameters[k] for k in sorted(parameters)},
            "checks": [r.to_json() for r in reports],
            "pass": overall,
        }
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return overall


@click.group()
@click.version_option(__version__)
def main():
    """Exact verification suites for the rank-one degeneration kernel."""


@main.command()
@click.argument("suite", type=click.Choice(sorted(_SUITES) + ["all"]))
@click.option("--bound", type=int, default=None, help="Degree bound; suite-specific default.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.option("--quiet", is_flag=True, help="Only print per-suite summaries.")
def verify(suite, bound, json_path, quiet):
    """Run one verification suite, or `all` of them."""
    if bound is not None and bound < 0:
        raise click.UsageError("bound must be non-negative")
    names = sorted(_SUITES) if suite == "all" else [suite]
    t0 = time.monotonic()
    reports = []
    for name in names:
        runner, _ = _SUITES[name]
        reports.append(runner(_effective_bound(name, bound)))
    duration = time.monotonic() - t0
    overall = _emit(reports, f"verify {suite}", {"suite": suite, "bound": bound}, json_path, quiet)
    click.echo(f"elapsed: {duration:.2f}s", err=True)
    raise SystemExit(0 if overall else 1)


@main.command()
@click.option("--m", "m", type=click.IntRange(min=0), required=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.option("--quiet", is_flag=True)
def exponents(m, json_path, quiet):
    """Asymptotic exponents of Sym^m: coinvariants against the symbolic oracle."""
    report = leading_exponent_check(m)
    exps = exponents_from_coinvariants(sym_power_rep(m))
    oracle = sorted(matrix_coefficient_exponents(m))
    left, right = bimodule_exponents(m)
    if not quiet:
        click.echo(f"coinvariant exponents: {exps.to_json()}")
        click.echo(f"oracle exponents: {oracle}")
        click.echo(f"leading exponent: {min(oracle)}")
        click.echo(
            "two-sided (left, right) exponents: "
            f"{[str(x) for x in sorted(left)]}, {[str(x) for x in sorted(right)]}"
        )
    click.echo(report.summary())
    click.echo(f"overall: {'PASS' if report.passed else 'FAIL'}")
    if json_path:
        payload = {
            "tool": "horocycle",
            "version": __version__,
            "command": "exponents",
            "m": m,
            "coinvariant_exponents": exps.to_json(),
            "oracle_exponents": oracle,
            "leading": min(oracle),
            "checks": [report.to_json()],
            "pass": report.passed,
        }
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    raise SystemExit(0 if report.passed else 1)


@main.command()
@click.option("--rep", "rep_spec", required=True, help="m,k for V_m (x) V_k*.")
@click.option("--point", "point_spec", required=True, help="a,b,c,d with p/q entries.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.option("--quiet", is_flag=True)
def localize(rep_spec, point_spec, json_path, quiet):
    """Stabilizer and localization fiber of V_m (x) V_k* at a rational point."""
    try:
        m, k = (int(x) for x in rep_spec.split(","))
        if m < 0 or k < 0:
            raise ValueError
    except ValueError:
        raise click.UsageError("--rep expects two non-negative integers m,k")
    try:
        point = RationalPoint.parse(point_spec)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError("--point expects four rationals a,b,c,d")
    detv = point.determinant()
    if detv == 1:
        act = lr_action_sl2()
        chart = "det=1"
    elif detv == 0 and any(point.coords):
        act = lr_action_horocycle()
        chart = "det=0"
    else:
        raise click.UsageError(
            f"point {point_spec} lies on neither supported variety (det={detv})"
        )
    module = external_tensor(sym_power_rep(m), dual_rep(sym_power_rep(k)))
    try:
        stab = stabilizer_subalgebra(act, point)
    except PointNotOnVariety as exc:
        raise click.UsageError(str(exc))
    cartan = LieSubalgebra(stab.desc, ((0, 1, 0, 0, 0, 0),))
    commuting = cartan if cartan.normalizes(stab) else None
    result = coinvariants(module, stab, commuting=commuting)
    if not quiet:
        click.echo(f"chart: {chart}")
        click.echo(f"stabilizer dimension: {stab.dim}")
        for v in stab.vectors:
            click.echo(f"  basis: {[str(x) for x in v]}")
        click.echo(f"coinvariants dimension: {result.dimension}")
        if commuting is not None and result.induced:
            click.echo(f"induced Cartan matrix: {[[str(x) for x in row] for row in result.induced[0]]}")
        elif commuting is None:
            click.echo("induced Cartan action: not applicable (Cartan does not normalize stabilizer)")
    click.echo(f"dimension: {result.dimension}")
    if json_path:
        payload = {
            "tool": "horocycle",
            "version": __version__,
            "command": "localize",
            "rep": [m, k],
            "point": point.to_json(),
            "chart": chart,
            "stabilizer": [[str(x) for x in v] for v in stab.vectors],
            "result": result.to_json(),
        }
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    raise SystemExit(0)


if __name__ == "__main__":
    main()
