"""
Convergent series for the eigenvalues.

Around z = pi n the characteristic equation reads

    (-1)^n sin xi = sum_{t >= 0, l >= 1} E_{t,l} xi^t mu^l,   xi = z - pi n,  mu = 1/(pi n),

with E_{t,l} built from Taylor coefficients of f_j(z) = (L M^j Phi)(1, z).
Writing xi = mu * sum_i rho_i mu^i and matching powers of mu yields a strict
recurrence for rho_i, and lambda_n = (pi n + mu * sum_i rho_i mu^i)^2.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache, partial

import numpy as np

from src.core.config import get_config
from src.core.errors import ConfigError, SeriesDivergenceError
from src.core.parallel import ordered_map
from src.problem import jets
from src.problem.jets import TaylorJet
from src.problem.nonlocal_op import KernelPass, OperatorContext, kernel_jets
from src.spectrum.models import EigenvalueRecord, Method
from src.spectrum.roots import uniform_regime

logger = logging.getLogger(__name__)


@dataclass
class CoefficientTable:
    """f_j jets at pi n together with the E, omega and rho they generate."""
    n: int
    alpha: float
    beta: float
    fj_jets: list[TaylorJet]
    E: dict[tuple[int, int], complex] = field(default_factory=dict)
    rho: list[complex] = field(default_factory=list)
    omega: list[complex] = field(default_factory=list)

    @property
    def sign(self) -> int:
        return -1 if self.n % 2 else 1

    @property
    def mu(self) -> float:
        return 1.0 / (math.pi * self.n)


def compute_fj_jets(ctx: OperatorContext, n: int, j_max: int, order: int) -> list[TaylorJet]:
    """Jets of f_0..f_{j_max} about pi n."""
    if n < 1:
        raise ConfigError(f"series index n must be >= 1, got {n}")
    jets.check_order(order)
    center = complex(math.pi * n)
    if ctx.is_trivial:
        return [TaylorJet(center, np.zeros(order + 1)) for _ in range(j_max + 1)]

    cos_j, sin_j = kernel_jets(ctx, center, order)
    w = cos_j
    out = []
    for j in range(j_max + 1):
        kernel = KernelPass(ctx, w, cos_j, sin_j)
        out.append(TaylorJet(center, kernel.L_end()))
        if j < j_max:
            w = kernel.M()
    return out


def compute_E(fj_jets: list[TaylorJet], t: int, l: int) -> complex:
    """
    E_{t,l} = sum_{j=max(0,l-t-1)}^{l-1} (-1)^{l-j-1} C(l-1, j) c_{t-l+j+1}[f_j].

    Raises:
        ConfigError: a needed f_j or Taylor coefficient is missing.
    """
    if t < 0 or l < 1:
        raise ConfigError(f"E_{{t,l}} needs t >= 0 and l >= 1, got ({t}, {l})")
    total = 0j
    for j in range(max(0, l - t - 1), l):
        if j >= len(fj_jets):
            raise ConfigError(f"E_{{{t},{l}}} needs f_{j}, only {len(fj_jets)} jets available")
        k = t - l + j + 1
        if k > fj_jets[j].order:
            raise ConfigError(f"E_{{{t},{l}}} needs jet order {k} of f_{j}, have {fj_jets[j].order}")
        sign = -1 if (l - j - 1) % 2 else 1
        total += sign * math.comb(l - 1, j) * fj_jets[j].coefficient(k)
    return total


@lru_cache(maxsize=None)
def weak_compositions(p: int, t: int) -> tuple[tuple[int, ...], ...]:
    """All t-tuples of nonnegative integers summing to p; ((),) for p = t = 0."""
    if t == 0:
        return ((),) if p == 0 else ()
    if t == 1:
        return ((p,),)
    out = []
    for first in range(p + 1):
        for rest in weak_compositions(p - first, t - 1):
            out.append((first,) + rest)
    return tuple(out)


def _composition_sum(rho: list[complex], p: int, t: int) -> complex:
    """sum over weak compositions zeta of p into t parts of prod rho_{zeta_k}."""
    total = 0j
    for zeta in weak_compositions(p, t):
        term = 1 + 0j
        for index in zeta:
            term *= rho[index]
        total += term
    return total


def _E(table: CoefficientTable, t: int, l: int) -> complex:
    key = (t, l)
    if key not in table.E:
        table.E[key] = compute_E(table.fj_jets, t, l)
    return table.E[key]


def compute_H(rho: list[complex], s: int, m: int) -> complex:
    """H_{s,m} = (-1)^s / (2s+1)! * sum over compositions of m into 2s+1 parts."""
    return (-1) ** s / math.factorial(2 * s + 1) * _composition_sum(rho, m, 2 * s + 1)


def compute_rho(table: CoefficientTable, N: int) -> list[complex]:
    """
    rho_0..rho_{N-1} by the strict recurrence.

    omega_i = sum_{p=0}^{i} sum_{t=0}^{i-p} E_{t, i+1-t-p} S(p, t), where S
    sums products of earlier rho over weak compositions; then
    rho_i = (-1)^n omega_i - sum_{s=1}^{[i/2]} H_{s, i-2s}.

    Raises:
        ConfigError: the table lacks f_j for j <= N-1 or jet order N-1.
    """
    if N < 1:
        raise ConfigError("series length N must be >= 1")
    if len(table.fj_jets) < N or min(j.order for j in table.fj_jets[:N]) < N - 1:
        raise ConfigError(f"insufficient jets for N={N}")

    sign = table.sign
    rho: list[complex] = []
    omega: list[complex] = []
    for i in range(N):
        w = 0j
        for p in range(i + 1):
            for t in range(i - p + 1):
                S = _composition_sum(rho, p, t)
                if S:
                    w += _E(table, t, i + 1 - t - p) * S
        correction = sum((compute_H(rho, s, i - 2 * s) for s in range(1, i // 2 + 1)), 0j)
        omega.append(w)
        rho.append(sign * w - correction)
    table.rho = rho
    table.omega = omega
    return rho


def rho_closed_form(fj_jets: list[TaylorJet], n: int) -> tuple[complex, complex, complex]:
    """The first three coefficients written out explicitly."""
    sign = -1 if n % 2 else 1
    f0, f1, f2 = (fj_jets[j].value for j in range(3))
    df0 = fj_jets[0].derivative(1)
    d2f0 = fj_jets[0].derivative(2)
    df1 = fj_jets[1].derivative(1)
    rho0 = sign * f0
    rho1 = f0 * df0 + sign * f1
    rho2 = (
        sign * f0**3 / 6
        + sign * f0 * df0**2
        + df0 * f1
        + sign * d2f0 * f0**2 / 2
        - f0**2
        + f0 * df1
        + sign * f2
    )
    return rho0, rho1, rho2


def build_table(ctx: OperatorContext, n: int, N: int) -> CoefficientTable:
    """Jets of order N for f_0..f_{N-1}, with rho_0..rho_{N-1} filled in."""
    if not 1 <= N <= get_config().numerics.jet_order_cap:
        raise ConfigError(f"series length N={N} outside [1, {get_config().numerics.jet_order_cap}]")
    table = CoefficientTable(n, ctx.alpha, ctx.beta, compute_fj_jets(ctx, n, N - 1, N))
    compute_rho(table, N)
    return table


def fit_growth(rho: list[complex], floor: float | None = None) -> tuple[float, float]:
    """
    Constants c1, c2 with |rho_i| <= c1 c2^i on the retained coefficients.

    A least-squares line through log|rho_i| is lifted until it majorizes every
    retained point; coefficients below floor are ignored.
    """
    if floor is None:
        floor = get_config().numerics.rho_floor
    idx = np.array([i for i, r in enumerate(rho) if abs(r) > floor])
    if idx.size == 0:
        return 0.0, 0.0
    logs = np.log(np.abs(np.asarray(rho, dtype=complex)[idx]))
    if idx.size == 1:
        return float(np.exp(logs[0])), 1.0
    slope, intercept = np.polyfit(idx, logs, 1)
    lift = float(np.max(logs - (intercept + slope * idx)))
    return float(math.exp(intercept + lift)), float(math.exp(slope))


def _partial_z(table: CoefficientTable, N: int) -> complex:
    mu = table.mu
    total = 0j
    for i in reversed(range(N)):
        total = total * mu + table.rho[i]
    return math.pi * table.n + mu * total


def series_eigenvalue(table: CoefficientTable, N: int) -> EigenvalueRecord:
    """
    lambda = (pi n + mu sum_{i<N} rho_i mu^i)^2 with the remainder estimate 2 c1 c2^N mu^N.

    Raises:
        SeriesDivergenceError: fitted c2 mu >= 1.
    """
    if len(table.rho) < N:
        raise ConfigError(f"table holds {len(table.rho)} coefficients, N={N} requested")
    mu = table.mu
    c1, c2 = fit_growth(table.rho[:N])
    if c2 * mu >= 1.0:
        raise SeriesDivergenceError(
            f"fitted growth {c2:.3g} >= pi n, series unreliable", n=table.n, method=Method.SERIES.value
        )
    remainder = 2.0 * c1 * (c2 * mu) ** N
    z = _partial_z(table, N)
    logger.debug("n=%d N=%d: z=%s remainder %.3g", table.n, N, z, remainder)
    return EigenvalueRecord(n=table.n, lam=z * z, method=Method.SERIES, residual=remainder, z=z, remainder=remainder)


def lambda_expansion(table: CoefficientTable) -> EigenvalueRecord:
    """pi^2 n^2 + 2 rho_0 + 2 rho_1 mu + (2 rho_2 + rho_0^2) mu^2, accurate to O(n^-3)."""
    if len(table.rho) < 3:
        raise ConfigError("expansion needs rho_0..rho_2 (build the table with N >= 3)")
    n, mu = table.n, table.mu
    r0, r1, r2 = table.rho[:3]
    lam = (math.pi * n) ** 2 + 2 * r0 + 2 * r1 * mu + (2 * r2 + r0 * r0) * mu * mu
    full = _partial_z(table, len(table.rho)) ** 2
    return EigenvalueRecord(n=n, lam=complex(lam), method=Method.EXPANSION, residual=float(abs(full - lam)))


def _series_for_n(ctx: OperatorContext, N: int, n: int) -> EigenvalueRecord:
    return series_eigenvalue(build_table(ctx, n, N), N)


def _expansion_for_n(ctx: OperatorContext, n: int) -> EigenvalueRecord:
    return lambda_expansion(build_table(ctx, n, 3))


def series_eigenvalues(
    ctx: OperatorContext,
    n_lo: int,
    n_hi: int,
    N: int,
    K: int | None = None,
    jobs: int | None = 1,
    n_check: int | None = None,
) -> list[EigenvalueRecord]:
    """Series records for n_lo..n_hi; indices below n_check come from Galerkin."""
    first, records = uniform_regime(ctx, n_lo, n_hi, K, n_check)
    records.extend(ordered_map(partial(_series_for_n, ctx, N), range(first, n_hi + 1), jobs))
    return records


def expansion_eigenvalues(
    ctx: OperatorContext,
    n_lo: int,
    n_hi: int,
    K: int | None = None,
    jobs: int | None = 1,
    n_check: int | None = None,
) -> list[EigenvalueRecord]:
    first, records = uniform_regime(ctx, n_lo, n_hi, K, n_check)
    records.extend(ordered_map(partial(_expansion_for_n, ctx), range(first, n_hi + 1), jobs))
    return records
