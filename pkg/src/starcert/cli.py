"""Command-line interface.

Exit codes: 0 certified / no witness needed / table written, 1 malformed
configuration, 2 hypothesis or precondition fails, 3 counterexample.
"""

from __future__ import annotations

import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from .config import RunConfig, config_from_mapping, load_config
from .criteria import (
    SectorParam,
    Verdict,
    c1_threshold,
    c3_threshold,
    c4_bounds,
    c7_factor,
    check,
    t1_threshold,
    t2_bounds,
    t3_factor,
)
from .disk import DiskGrid
from .errors import ConfigError, StarcertError
from .harness import (
    FunctionFamily,
    example1_report,
    example1_sweep,
    fuzz_theorem,
    write_sharpness_csv,
)
from .report import (
    reconciliation_to_dict,
    serialize_report,
    theorem_report_to_dict,
    write_threshold_csv,
)
from .series import HClassFunction, NormalizedFunction, PowerSeries
from .subordination import RotatedHalfPlaneTarget, mm_witness, rotate

EXIT_OK, EXIT_CONFIG, EXIT_INFORMATIVE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
_VERDICT_EXIT = {
    Verdict.CERTIFIED: EXIT_OK,
    Verdict.HYPOTHESIS_FAILS: EXIT_INFORMATIVE,
    Verdict.PRECONDITION_FAILS: EXIT_INFORMATIVE,
    Verdict.COUNTEREXAMPLE: EXIT_COUNTEREXAMPLE,
}


def _timestamp():
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _write_report(config: RunConfig, grid, report, *, kind=None):
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    text = serialize_report(
        report, command=config.command, grid=grid, seed=config.seed,
        tolerance=config.tolerance, timestamp=_timestamp(), kind=kind,
    )
    (out / "report.json").write_text(text)
    return out / "report.json"


def _tables_dir(config):
    path = Path(config.out_dir) / "tables"
    path.mkdir(parents=True, exist_ok=True)
    return path


def _build_function(config: RunConfig):
    if config.theorem in ("C2", "C5", "C8"):
        try:
            return NormalizedFunction.from_coefficients(config.f, config.n)
        except StarcertError as exc:
            raise ConfigError("f", str(exc)) from None
    try:
        return HClassFunction.from_coefficients(config.p, config.n)
    except StarcertError as exc:
        raise ConfigError("p", str(exc)) from None


def _run_check(config, grid):
    fn = _build_function(config)
    g = PowerSeries(config.g) if config.g is not None else None
    report = check(
        config.theorem, fn, grid, alpha=config.alpha, mu=config.mu, g=g, A=config.A,
        n=config.n, tolerance=config.tolerance, refine_steps=config.refine_steps,
    )
    _write_report(config, grid, report)
    return _VERDICT_EXIT[report.verdict]


def _run_example1(config, grid):
    n = config.n if config.n is not None else 2
    report, rec = example1_report(n, config.k, grid, tolerance=config.tolerance,
                                  refine_steps=config.refine_steps)
    body = {"reconciliation": reconciliation_to_dict(rec), "theorem_report": theorem_report_to_dict(report)}
    _write_report(config, grid, body, kind="example1_run")
    if config.sweep:
        rows = example1_sweep(n, config.sweep, grid, tolerance=config.tolerance,
                              refine_steps=config.refine_steps)
        write_sharpness_csv(rows, _tables_dir(config) / "sharpness_t1.csv")
    return _VERDICT_EXIT[report.verdict]


def _run_fuzz(config, grid):
    family_id = "poly_f" if config.theorem in ("C2", "C5", "C8") else config.family
    try:
        family = FunctionFamily(family_id, config.n or 1, config.cap, config.degree,
                                config.alpha or 0.0)
    except (StarcertError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("family", str(exc)) from None
    g = PowerSeries(config.g) if config.g is not None else None
    report = fuzz_theorem(
        config.theorem, family, grid, config.seed, config.trials, alpha=config.alpha,
        mu=config.mu, g=g, A=config.A, tolerance=config.tolerance,
        refine_steps=config.refine_steps,
    )
    _write_report(config, grid, report)
    return EXIT_COUNTEREXAMPLE if report.counterexample_count else EXIT_OK


def _run_witness(config, grid):
    alpha = config.alpha or 0.0
    target = RotatedHalfPlaneTarget(alpha, config.orientation)
    if config.h is not None:
        h = PowerSeries(config.h)
    else:
        h = rotate(PowerSeries(config.p), alpha, config.orientation)
    witness = mm_witness(h, target, grid, refine_steps=config.refine_steps)
    if witness is None:
        _write_report(config, grid, {"subordinate": True, "witness": None}, kind="witness_search")
    else:
        _write_report(config, grid, witness)
    return EXIT_OK


def threshold_rows(theorem, n_values, alpha_values=(), mu_values=(), A=None):
    """Rows of the threshold table for every ``(n, sector)`` pair."""
    theorem = theorem.upper()
    if mu_values:
        sectors = [SectorParam.from_mu(m) for m in mu_values]
    else:
        sectors = [SectorParam.from_alpha(a) for a in (alpha_values or [0.0])]
    rows = []
    for n in n_values:
        for s in sectors:
            row = {"n": n, "alpha": s.alpha, "mu": s.mu, "A": A, "threshold_low": None, "threshold_high": None}
            if theorem in ("T1", "C1", "C2", "C3"):
                if A is None:
                    raise ConfigError("A", f"{theorem} thresholds need A")
                if theorem == "T1":
                    row["threshold_low"] = t1_threshold(n, A, s.alpha)
                elif theorem == "C3":
                    if n != 1:
                        continue
                    row["threshold_low"] = c3_threshold(A, abs(s.alpha))
                else:
                    row["threshold_low"] = c1_threshold(n, A, s.mu)
            elif theorem == "T2":
                row["threshold_low"], row["threshold_high"] = t2_bounds(n, abs(s.alpha))
            elif theorem in ("C4", "C5"):
                row["threshold_low"], row["threshold_high"] = c4_bounds(n, s.mu)
            elif theorem == "C6":
                if n != 1:
                    continue
                row["threshold_low"], row["threshold_high"] = t2_bounds(1, abs(s.alpha))
            elif theorem == "T3":
                row["threshold_high"] = t3_factor(n, s.alpha)
            elif theorem in ("C7", "C8"):
                row["threshold_high"] = c7_factor(n, s.mu)
            elif theorem == "C9":
                if n != 1:
                    continue
                row["threshold_high"] = t3_factor(1, s.alpha)
            rows.append(row)
    return rows


def _run_tabulate(config, grid):
    n_values = config.n_values or ([config.n] if config.n is not None else [1])
    alpha_values = config.alpha_values or ([config.alpha] if config.alpha is not None else [])
    mu_values = config.mu_values or ([config.mu] if config.mu is not None else [])
    rows = threshold_rows(config.theorem, n_values, alpha_values, mu_values, config.A)
    path = _tables_dir(config) / f"thresholds_{config.theorem.lower()}.csv"
    write_threshold_csv(rows, path)
    return EXIT_OK


_RUNNERS = {
    "check": _run_check,
    "example1": _run_example1,
    "fuzz": _run_fuzz,
    "witness": _run_witness,
    "tabulate": _run_tabulate,
}


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit status."""
    config.validate()
    grid = DiskGrid(config.grid_radial, config.grid_angular, config.max_radius)
    return _RUNNERS[config.command](config, grid)


# --------------------------------------------------------------------------
# click front end


def _global(ctx):
    return dict(ctx.obj or {})


def _invoke(ctx, mapping):
    data = _global(ctx)
    data.update({k: v for k, v in mapping.items() if v is not None})
    ctx.exit(run(config_from_mapping(data)))


@click.group(invoke_without_command=True)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON run configuration.")
@click.option("--grid-radial", type=int, help="Radial sample count.")
@click.option("--grid-angular", type=int, help="Angular sample count.")
@click.option("--max-radius", type=float, help="Outermost sampled radius (< 1).")
@click.option("--refine-steps", type=int, help="Pattern-search halvings per extremum.")
@click.option("--seed", type=int, help="Seed for random families.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="Output directory.")
@click.option("--tolerance", type=float, help="Certification tolerance.")
@click.version_option(package_name="starcert")
@click.pass_context
def cli(ctx, config_path, grid_radial, grid_angular, max_radius, refine_steps, seed, out_dir, tolerance):
    """Certify sector conditions for analytic functions on the unit disk."""
    ctx.obj = {k: v for k, v in {
        "grid_radial": grid_radial, "grid_angular": grid_angular, "max_radius": max_radius,
        "refine_steps": refine_steps, "seed": seed, "out_dir": out_dir, "tolerance": tolerance,
    }.items() if v is not None}
    if config_path is not None:
        if ctx.invoked_subcommand is not None:
            raise ConfigError("config", "--config cannot be combined with a subcommand")
        config = load_config(config_path)
        for key, value in ctx.obj.items():
            setattr(config, key, value)
        ctx.exit(run(config.validate()))
    elif ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


def _coef_option(name, help_text):
    return click.option(f"--{name}", help=help_text)


@cli.command("check")
@click.option("--theorem", required=True, help="T1, C1, ..., C9 (case-insensitive).")
@_coef_option("p", "Coefficients of p, e.g. \"1,0,0.07\".")
@_coef_option("f", "Coefficients of f, e.g. \"0,1,0,0.02\".")
@_coef_option("g", "Coefficients of g (defaults to 1).")
@click.option("--n", type=int)
@click.option("--alpha", type=float, help="Rotation in radians.")
@click.option("--mu", type=float, help="Sector order in (0, 1].")
@click.option("--declared-A", "A", type=float, help="Declared lower bound A.")
@click.pass_context
def check_cmd(ctx, theorem, p, f, g, n, alpha, mu, A):
    """Check one theorem on one function."""
    _invoke(ctx, {"command": "check", "theorem": theorem, "p": p, "f": f,
                  "g": g, "n": n, "alpha": alpha, "mu": mu, "A": A})


@cli.command("example1")
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--k", type=float, help="Coefficient (defaults to k_max).")
@click.option("--sweep", type=int, default=0, help="Also write a sharpness table with this many points.")
@click.pass_context
def example1_cmd(ctx, n, k, sweep):
    """Reproduce the worked example p = 1 + k z^n, g = 1 + z/3, alpha = pi/4."""
    _invoke(ctx, {"command": "example1", "n": n, "k": k, "sweep": sweep})


@cli.command("fuzz")
@click.option("--theorem", required=True)
@click.option("--family", default="poly_p", show_default=True)
@click.option("--n", type=int, default=1, show_default=True)
@click.option("--cap", type=float, default=0.3, show_default=True, help="Coefficient modulus cap.")
@click.option("--degree", type=int, default=4, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@_coef_option("g", "Coefficients of g (defaults to 1).")
@click.option("--alpha", type=float)
@click.option("--mu", type=float)
@click.option("--declared-A", "A", type=float)
@click.pass_context
def fuzz_cmd(ctx, theorem, family, n, cap, degree, trials, g, alpha, mu, A):
    """Search random instances for counterexamples."""
    _invoke(ctx, {"command": "fuzz", "theorem": theorem, "family": family, "n": n, "cap": cap,
                  "degree": degree, "trials": trials, "g": g, "alpha": alpha,
                  "mu": mu, "A": A})


@cli.command("witness")
@_coef_option("h", "Coefficients of h with h(0) = q(0).")
@_coef_option("p", "Coefficients of p in H[1,n]; h = exp(+-i alpha) p.")
@click.option("--alpha", type=float, default=0.0, show_default=True)
@click.option("--orientation", type=click.Choice(["plus", "minus"]), default="plus", show_default=True)
@click.pass_context
def witness_cmd(ctx, h, p, alpha, orientation):
    """Locate the boundary-touch data for h leaving the half-plane."""
    _invoke(ctx, {"command": "witness", "h": h, "p": p,
                  "alpha": alpha, "orientation": orientation})


@cli.command("tabulate")
@click.option("--theorem", required=True)
@click.option("--n", "n_values", default="1", show_default=True, help="Range such as 1..4.")
@click.option("--alpha", "alpha_values", help="List such as 0,0.2,...,1.4 (radians).")
@click.option("--mu", "mu_values", help="List of sector orders.")
@click.option("--A", "A", type=float, help="Lower bound A for the real-part thresholds.")
@click.pass_context
def tabulate_cmd(ctx, theorem, n_values, alpha_values, mu_values, A):
    """Write a threshold table for a grid of (n, alpha or mu)."""
    _invoke(ctx, {"command": "tabulate", "theorem": theorem, "n_values": n_values,
                  "alpha_values": alpha_values, "mu_values": mu_values, "A": A})


def main(argv=None) -> int:
    """Console entry point; never raises for user errors."""
    try:
        rv = cli.main(args=argv, prog_name="starcert", standalone_mode=False)
        code = rv if isinstance(rv, int) else 0
    except click.exceptions.Exit as exc:
        code = exc.exit_code
    except ConfigError as exc:
        click.echo(f"error: invalid configuration: {exc}", err=True)
        code = EXIT_CONFIG
    except click.ClickException as exc:
        exc.show()
        code = EXIT_CONFIG
    except click.Abort:
        code = EXIT_CONFIG
    except StarcertError as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INFORMATIVE
    if argv is None:
        sys.exit(code)
    return code

