"""Cross-method comparison, error-rate fits, eigenfunction closeness and parameter sweeps."""
import logging
import math
from functools import partial
from itertools import combinations

import numpy as np

from src.core.config import RunConfig, get_config
from src.core.errors import BelowFloorError, ConfigError
from src.core.parallel import ordered_map
from src.diagnostics.models import ClosenessRow, ComparisonRow, SlopeSummary, SweepRow
from src.problem.grid import weights
from src.problem.nonlocal_op import OperatorContext, build_context
from src.problem.potential import Potential, parse_potential
from src.spectrum.asymptotics import gamma_curve, lambda_four_term, lambda_two_term
from src.spectrum.cauchy import eigenfunction
from src.spectrum.galerkin import galerkin_eigenvalues
from src.spectrum.models import ROOT_METHODS, EigenvalueRecord, Method
from src.spectrum.roots import find_n_check, shooting_eigenvalues
from src.spectrum.series import expansion_eigenvalues, series_eigenvalues

logger = logging.getLogger(__name__)

_MIN_FIT_POINTS = 5


def method_records(
    ctx: OperatorContext,
    method: Method,
    n_lo: int,
    n_hi: int,
    N: int | None = None,
    K: int | None = None,
    jobs: int | None = 1,
    n_check: int | None = None,
) -> list[EigenvalueRecord]:
    """Records for n_lo..n_hi from one method, in index order."""
    N = get_config().numerics.series_N if N is None else N
    if method == Method.SHOOTING:
        return shooting_eigenvalues(ctx, n_lo, n_hi, K, jobs, n_check)
    if method == Method.SERIES:
        return series_eigenvalues(ctx, n_lo, n_hi, N, K, jobs, n_check)
    if method == Method.EXPANSION:
        return expansion_eigenvalues(ctx, n_lo, n_hi, K, jobs, n_check)
    if method == Method.ASYMPTOTIC2:
        return ordered_map(partial(lambda_two_term, ctx), range(n_lo, n_hi + 1), jobs)
    if method == Method.ASYMPTOTIC4:
        return ordered_map(partial(lambda_four_term, ctx), range(n_lo, n_hi + 1), jobs)
    return [r for r in galerkin_eigenvalues(ctx, K, n_hi) if r.n >= n_lo]


def compute_records(
    ctx: OperatorContext,
    methods: list[Method],
    n_lo: int,
    n_hi: int,
    N: int | None = None,
    K: int | None = None,
    jobs: int | None = 1,
) -> dict[Method, list[EigenvalueRecord]]:
    """Records per method, sharing one search for the start of the uniform regime."""
    n_check = None
    if any(m in ROOT_METHODS for m in methods):
        n_check = find_n_check(ctx, n_hi)
        if n_check is None:
            logger.warning("no admissible single-root box up to n=%d; root methods fall back to Galerkin", n_hi)
            n_check = n_hi + 1
    return {m: method_records(ctx, m, n_lo, n_hi, N, K, jobs, n_check) for m in methods}


def enclosure_violations(records: list[EigenvalueRecord], bound: float) -> list[EigenvalueRecord]:
    """Records with |Im lambda| > bound or Re lambda < -bound."""
    return [r for r in records if not r.within_enclosure(bound)]


def compare(
    ctx: OperatorContext,
    n_lo: int,
    n_hi: int,
    methods: list[Method],
    N: int | None = None,
    K: int | None = None,
    jobs: int | None = 1,
) -> list[ComparisonRow]:
    """One row per n with every method's eigenvalue and all pairwise gaps."""
    if not methods:
        raise ConfigError("compare needs at least one method")
    by_method = compute_records(ctx, methods, n_lo, n_hi, N, K, jobs)
    rows = []
    for i, n in enumerate(range(n_lo, n_hi + 1)):
        lams = {m.value: by_method[m][i].lam for m in methods}
        gaps = {f"{a.value}_{b.value}": float(abs(lams[a.value] - lams[b.value])) for a, b in combinations(methods, 2)}
        values = {k: (float(v.real), float(v.imag)) for k, v in lams.items()}
        rows.append(ComparisonRow(n=n, values=values, gaps=gaps))
    return rows


def reference_method(methods: list[Method]) -> Method:
    """Shooting when present, else the first method."""
    return Method.SHOOTING if Method.SHOOTING in methods else methods[0]


def slope_fit(pairs: list[tuple[int, float]], floor: float | None = None) -> float:
    """
    Least-squares slope of log(error) against log(n).

    Nonpositive or non-finite errors are dropped and the rest clamped to the
    error floor.

    Raises:
        BelowFloorError: fewer than five usable pairs.
    """
    floor = get_config().numerics.error_floor if floor is None else floor
    usable = [(n, max(e, floor)) for n, e in pairs if n > 0 and e > 0 and math.isfinite(e)]
    if len(usable) < _MIN_FIT_POINTS:
        raise BelowFloorError(f"only {len(usable)} usable error samples, need {_MIN_FIT_POINTS}")
    n, e = np.array(usable, dtype=float).T
    slope, _ = np.polyfit(np.log(n), np.log(e), 1)
    return float(slope)


def summarize(rows: list[ComparisonRow], methods: list[Method]) -> list[SlopeSummary]:
    """Gap decay rate of every method against the reference."""
    ref = reference_method(methods)
    summaries = []
    for m in methods:
        if m == ref:
            continue
        a, b = (ref, m) if methods.index(ref) < methods.index(m) else (m, ref)
        pairs = [(row.n, row.gap(a.value, b.value)) for row in rows]
        try:
            slope = slope_fit(pairs)
        except BelowFloorError:
            logger.info("%s vs %s: gaps below floor, no slope", m.value, ref.value)
            slope = None
        summaries.append(SlopeSummary(reference=ref.value, method=m.value, slope=slope))
    return summaries


def _closeness(ctx: OperatorContext, record: EigenvalueRecord) -> tuple[int, float]:
    phi = eigenfunction(ctx, record.z)
    x = ctx.grid.nodes
    w = weights(ctx.grid)
    cosine = math.sqrt(2.0) * np.cos(math.pi * record.n * x)
    return record.n, math.sqrt(float(np.sum(w * np.abs(phi.values - cosine) ** 2)))


def bari_closeness(ctx: OperatorContext, n_lo: int, n_hi: int, jobs: int | None = 1) -> list[ClosenessRow]:
    """
    Distances d_n between normalized eigenfunctions and sqrt(2) cos(pi n x).

    Only indices with a shooting root are used; Galerkin-backed indices are skipped.
    """
    records = [r for r in shooting_eigenvalues(ctx, n_lo, n_hi, jobs=jobs) if r.z is not None]
    skipped = (n_hi - n_lo + 1) - len(records)
    if skipped:
        logger.info("closeness check skips %d indices below the uniform regime", skipped)
    distances = ordered_map(partial(_closeness, ctx), records, jobs)
    rows = []
    total = 0.0
    for n, d in distances:
        total += d * d
        rows.append(ClosenessRow(n=n, distance=d, partial_sum=total))
    return rows


class SpectrumService:
    """Runs the command-line computations for one validated RunConfig."""

    def __init__(self, run: RunConfig):
        """Parse both potentials once for the whole run."""
        self.run = run
        self.V: Potential = parse_potential(run.v_spec)
        self.Q: Potential = parse_potential(run.q_spec)
        self.methods = [Method(m) for m in dict.fromkeys(run.methods)]

    def context(self, alpha: float | None = None, beta: float | None = None) -> OperatorContext:
        alpha = self.run.alphas[0] if alpha is None else alpha
        beta = self.run.betas[0] if beta is None else beta
        return build_context(self.V, self.Q, alpha, beta, self.run.grid)

    def _single_point(self) -> OperatorContext:
        if len(self.run.alphas) > 1 or len(self.run.betas) > 1:
            raise ConfigError("alpha and beta must be single values here; use sweep for ranges")
        return self.context()

    def _records(self, ctx: OperatorContext, methods: list[Method]) -> dict[Method, list[EigenvalueRecord]]:
        run = self.run
        by_method = compute_records(ctx, methods, run.n_lo, run.n_hi, run.series_N, run.K, run.jobs)
        for m, records in by_method.items():
            for r in enclosure_violations(records, ctx.full_bound):
                logger.warning("n=%d method=%s: eigenvalue %s outside the spectral enclosure", r.n, m.value, r.lam)
        return by_method

    def eigs(self) -> list[dict]:
        """Rows (n, method, re, im, residual, remainder) ordered by n, then method."""
        by_method = self._records(self._single_point(), self.methods)
        count = self.run.n_hi - self.run.n_lo + 1
        return [by_method[m][i].to_row() for i in range(count) for m in self.methods]

    def sweep(self) -> list[SweepRow]:
        """Eigenvalues of the first method over the alpha x beta product, alpha-major."""
        run = self.run
        if len(run.alphas) < 2 and len(run.betas) < 2:
            raise ConfigError("sweep needs alpha or beta as a range lo:hi:steps")
        method = self.methods[0]
        rows = []
        for alpha in run.alphas:
            for beta in run.betas:
                ctx = self.context(alpha, beta)
                for r in self._records(ctx, [method])[method]:
                    rows.append(SweepRow(alpha=alpha, beta=beta, n=r.n, re=float(r.lam.real), im=float(r.lam.imag)))
        return rows

    def compare(self) -> tuple[list[ComparisonRow], list[SlopeSummary]]:
        run = self.run
        rows = compare(self._single_point(), run.n_lo, run.n_hi, self.methods, run.series_N, run.K, run.jobs)
        return rows, summarize(rows, self.methods)

    def curve(self, t_max: float, samples: int) -> list[dict]:
        """Samples (t, re, im) of the localization curve on [0, t_max]."""
        if t_max <= 0 or samples < 2:
            raise ConfigError("curve needs t_max > 0 and at least 2 samples")
        t = np.linspace(0.0, t_max, samples)
        gamma = gamma_curve(self._single_point(), t)
        return [{"t": float(tk), "re": float(g.real), "im": float(g.imag)} for tk, g in zip(t, gamma)]

    def markers(self) -> list[dict]:
        """Eigenvalues of the first method placed at t = pi n."""
        method = self.methods[0]
        records = self._records(self._single_point(), [method])[method]
        return [
            {"n": r.n, "t": math.pi * r.n, "re": float(r.lam.real), "im": float(r.lam.imag)}
            for r in records
        ]
