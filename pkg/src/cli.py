#!/usr/bin/env python3
"""Main CLI entry point."""
import logging
import math
import os
from pathlib import Path
from typing import Optional

import numpy as np
import typer
from dotenv import load_dotenv

from src.core.config import OutputFormat, RunConfig, build_run_config, get_config, load_config, set_config
from src.core.errors import ConfigError, SpectralError
from src.diagnostics.report import columns_of, write_table
from src.diagnostics.service import SpectrumService, enclosure_violations
from src.problem.nonlocal_op import build_context
from src.problem.potential import parse_potential
from src.spectrum.cauchy import char_fn, char_fn_jet
from src.spectrum.models import Method
from src.spectrum.roots import shooting_eigenvalues
from src.spectrum.series import build_table, rho_closed_form

LOG_LEVEL_ENV_VAR = "NONLOCAL_SPECTRA_LOG_LEVEL"

EIGS_COLUMNS = ["n", "method", "re", "im", "residual", "remainder"]
SWEEP_COLUMNS = ["alpha", "beta", "n", "re", "im"]
CURVE_COLUMNS = ["t", "re", "im"]
MARKER_COLUMNS = ["n", "t", "re", "im"]

logger = logging.getLogger(__name__)

app = typer.Typer(
    help=(
        "Eigenvalues of -y'' + V(x) y(x+alpha) + Q(x) y(x-beta) on [0,1] with Neumann conditions.\n\n"
        "CSV columns: eigs n,method,re,im,residual,remainder; sweep alpha,beta,n,re,im; "
        "compare n,<m>_re,<m>_im,...,gap_<a>_<b>,ngap_<a>_<b>,n3gap_<a>_<b>; curve t,re,im "
        "(markers n,t,re,im)."
    )
)


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr"),
    config: Optional[Path] = typer.Option(None, "--config", help="Numerics/output settings JSON"),
):
    """Load settings and configure logging for every command."""
    load_dotenv()
    level = "INFO" if verbose else os.getenv(LOG_LEVEL_ENV_VAR, "WARNING")
    logging.basicConfig(level=level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if config is not None:
        set_config(load_config(config))


def _parse_range(text: str, name: str) -> list[float]:
    """A single value or lo:hi:steps."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 2:
                raise ConfigError(f"{name} range needs at least 2 steps")
            return [float(v) for v in np.linspace(lo, hi, steps)]
    except ValueError as e:
        raise ConfigError(f"malformed {name} {text!r}: {e}") from e
    raise ConfigError(f"{name} must be a value or lo:hi:steps, got {text!r}")


def _parse_n(text: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return int(parts[0]), int(parts[0])
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError as e:
        raise ConfigError(f"malformed --n {text!r}: {e}") from e
    raise ConfigError(f"--n must be lo:hi, got {text!r}")


def _build_run(v, q, alpha, beta, n, method, series_n, grid, k, fmt, out, jobs) -> RunConfig:
    """Validate flags; unset numeric and output flags fall back to the loaded config."""
    settings = get_config()
    n_lo, n_hi = _parse_n(n)
    return build_run_config(
        v_spec=v,
        q_spec=q,
        alphas=_parse_range(alpha, "alpha"),
        betas=_parse_range(beta, "beta"),
        n_lo=n_lo,
        n_hi=n_hi,
        methods=[m.strip() for m in method.split(",") if m.strip()],
        series_N=settings.numerics.series_N if series_n is None else series_n,
        grid=settings.numerics.grid_resolution if grid is None else grid,
        K=settings.numerics.galerkin_K if k is None else k,
        format=settings.output.format if fmt is None else fmt,
        out=out,
        jobs=settings.output.jobs if jobs is None else jobs,
    )


def _fail(e: SpectralError) -> None:
    typer.echo(f"❌ {e}", err=True)
    raise typer.Exit(e.exit_code)


V_OPT = typer.Option("const:0", "--V", help="Potential V: const:c | poly:c0,c1,.. | trig:a,k | file:PATH, ';' adds terms")
Q_OPT = typer.Option("const:0", "--Q", help="Potential Q, same grammar as --V")
ALPHA_OPT = typer.Option("0", "--alpha", help="Translation alpha in [0,1], or lo:hi:steps")
BETA_OPT = typer.Option("0", "--beta", help="Translation beta in [0,1], or lo:hi:steps")
N_OPT = typer.Option("1:10", "--n", help="Index range lo:hi")
METHOD_OPT = typer.Option("shooting", "--method", "-m", help=f"Comma list of {', '.join(m.value for m in Method)}")
SERIES_N_OPT = typer.Option(None, "--series-N", help="Number of series coefficients (1-8) [config: numerics.series_N]")
GRID_OPT = typer.Option(None, "--grid", help="Grid resolution, minimum intervals [config: numerics.grid_resolution]")
K_OPT = typer.Option(None, "--K", help="Galerkin basis size [config: numerics.galerkin_K]")
FORMAT_OPT = typer.Option(None, "--format", "-f", help="Output format [config: output.format]")
OUT_OPT = typer.Option(None, "--out", "-o", help="Output file (default stdout)")
JOBS_OPT = typer.Option(None, "--jobs", "-j", help="Worker processes [config: output.jobs, else all cores]")


@app.command()
def eigs(
    v: str = V_OPT, q: str = Q_OPT, alpha: str = ALPHA_OPT, beta: str = BETA_OPT, n: str = N_OPT,
    method: str = METHOD_OPT, series_n: Optional[int] = SERIES_N_OPT, grid: Optional[int] = GRID_OPT, k: Optional[int] = K_OPT,
    fmt: Optional[OutputFormat] = FORMAT_OPT, out: Optional[Path] = OUT_OPT, jobs: Optional[int] = JOBS_OPT,
):
    """Eigenvalues for each n and method."""
    try:
        run = _build_run(v, q, alpha, beta, n, method, series_n, grid, k, fmt, out, jobs)
        rows = SpectrumService(run).eigs()
        write_table(rows, EIGS_COLUMNS, run.format, run.out)
    except SpectralError as e:
        _fail(e)


@app.command()
def sweep(
    v: str = V_OPT, q: str = Q_OPT, alpha: str = ALPHA_OPT, beta: str = BETA_OPT, n: str = N_OPT,
    method: str = METHOD_OPT, series_n: Optional[int] = SERIES_N_OPT, grid: Optional[int] = GRID_OPT, k: Optional[int] = K_OPT,
    fmt: Optional[OutputFormat] = FORMAT_OPT, out: Optional[Path] = OUT_OPT, jobs: Optional[int] = JOBS_OPT,
):
    """Eigenvalues over an alpha x beta grid (first method only)."""
    try:
        run = _build_run(v, q, alpha, beta, n, method, series_n, grid, k, fmt, out, jobs)
        rows = [row.model_dump() for row in SpectrumService(run).sweep()]
        write_table(rows, SWEEP_COLUMNS, run.format, run.out)
    except SpectralError as e:
        _fail(e)


@app.command()
def compare(
    v: str = V_OPT, q: str = Q_OPT, alpha: str = ALPHA_OPT, beta: str = BETA_OPT, n: str = N_OPT,
    method: str = typer.Option("shooting,asymptotic2", "--method", "-m", help="Comma list of methods"),
    series_n: Optional[int] = SERIES_N_OPT, grid: Optional[int] = GRID_OPT, k: Optional[int] = K_OPT,
    fmt: Optional[OutputFormat] = FORMAT_OPT, out: Optional[Path] = OUT_OPT, jobs: Optional[int] = JOBS_OPT,
):
    """Side-by-side methods with pairwise gaps and log-log gap slopes."""
    try:
        run = _build_run(v, q, alpha, beta, n, method, series_n, grid, k, fmt, out, jobs)
        rows, summary = SpectrumService(run).compare()
        flat = [row.flat() for row in rows]
        write_table(flat, columns_of(flat), run.format, run.out, [s.model_dump() for s in summary])
    except SpectralError as e:
        _fail(e)


@app.command()
def curve(
    v: str = V_OPT, q: str = Q_OPT, alpha: str = ALPHA_OPT, beta: str = BETA_OPT, n: str = N_OPT,
    method: str = METHOD_OPT, grid: Optional[int] = GRID_OPT, k: Optional[int] = K_OPT,
    t_max: float = typer.Option(20 * math.pi, "--t-max", help="Upper end of the curve parameter"),
    samples: int = typer.Option(512, "--samples", help="Curve sample count"),
    markers_out: Optional[Path] = typer.Option(None, "--markers-out", help="Write (n, pi n, lambda_n) markers here"),
    fmt: Optional[OutputFormat] = FORMAT_OPT, out: Optional[Path] = OUT_OPT, jobs: Optional[int] = JOBS_OPT,
):
    """Samples of the localization curve t^2 + v cos(t alpha) + q cos(t beta)."""
    try:
        run = _build_run(v, q, alpha, beta, n, method, None, grid, k, fmt, out, jobs)
        service = SpectrumService(run)
        write_table(service.curve(t_max, samples), CURVE_COLUMNS, run.format, run.out)
        if markers_out is not None:
            write_table(service.markers(), MARKER_COLUMNS, run.format, markers_out)
    except SpectralError as e:
        _fail(e)


def _check_unperturbed() -> str:
    zero = parse_potential("const:0")
    ctx = build_context(zero, zero, 1.0, 1.0, 256)
    for r in shooting_eigenvalues(ctx, 1, 5):
        if abs(r.lam - (math.pi * r.n) ** 2) > 1e-10 * (math.pi * r.n) ** 2:
            raise AssertionError(f"n={r.n}: {r.lam} != pi^2 n^2")
    return "V=Q=0 gives pi^2 n^2"


def _smooth_context():
    return build_context(parse_potential("const:0.5+0.25i;trig:0.5,1"), parse_potential("trig:0.3,2"), 0.3, 0.7, 512)


def _check_recurrence() -> str:
    ctx = _smooth_context()
    for n in (5, 8):
        table = build_table(ctx, n, 4)
        for i, closed in enumerate(rho_closed_form(table.fj_jets, n)):
            if abs(table.rho[i] - closed) > 1e-10 * max(1.0, abs(closed)):
                raise AssertionError(f"n={n}: rho_{i} recurrence {table.rho[i]} != closed form {closed}")
    return "rho_0..rho_2 match their closed forms"


def _check_jet_derivative() -> str:
    ctx = _smooth_context()
    center, radius, points = complex(6 * math.pi), 0.1, 32
    theta = 2 * math.pi * np.arange(points) / points
    ring = np.array([char_fn(ctx, center + radius * np.exp(1j * t)) for t in theta])
    contour = complex(np.mean(ring * np.exp(-1j * theta)) / radius)
    jet = char_fn_jet(ctx, center, 1).coeffs[1]
    if abs(jet - contour) > 1e-6 * max(1.0, abs(contour)):
        raise AssertionError(f"jet derivative {jet} != contour derivative {contour}")
    return "char_fn jet derivative matches the Cauchy integral"


def _check_enclosure() -> str:
    ctx = _smooth_context()
    records = shooting_eigenvalues(ctx, 1, 8, K=64)
    bad = enclosure_violations(records, ctx.full_bound)
    if bad:
        raise AssertionError(f"{len(bad)} eigenvalues outside the enclosure, first n={bad[0].n}")
    return "eigenvalues respect the spectral enclosure"


@app.command()
def selftest():
    """Quick consistency checks of the solver stack."""
    failures = 0
    for check in (_check_unperturbed, _check_recurrence, _check_jet_derivative, _check_enclosure):
        try:
            typer.echo(f"✅ {check()}")
        except (AssertionError, SpectralError) as e:
            typer.echo(f"❌ {check.__name__.removeprefix('_check_')}: {e}", err=True)
            failures += 1
    if failures:
        typer.echo(f"\n📊 {failures} check(s) failed", err=True)
        raise typer.Exit(3)
    typer.echo("\n📊 All checks passed")


if __name__ == "__main__":
    app()
