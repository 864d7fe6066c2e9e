"""
Auxiliary Cauchy problem and the characteristic function.

phi(x, z) solves -phi'' + B phi = z^2 phi, phi(0) = 1, phi'(0) = 0, through
the integral equation phi = cos zx + M phi / z, summed as the series
sum_j M^j Phi / z^j with Phi(x) = cos zx. Eigenvalues are lambda = z^2 at
zeros of char_fn(z) = phi'(1, z) = -z sin z + (L phi)(1, z).
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.core.config import get_config
from src.core.errors import AdmissibilityError, ConvergenceError, NotARootError
from src.problem import jets
from src.problem.grid import GridFunction, weights
from src.problem.jets import TaylorJet
from src.problem.nonlocal_op import KernelPass, OperatorContext, kernel_jets

logger = logging.getLogger(__name__)

_DIVERGENT_STREAK = 3


@dataclass(frozen=True)
class CauchySolution:
    """phi(., z) with the bookkeeping of its Neumann series."""
    z: complex
    phi: GridFunction
    terms_used: int
    last_term_norm: float
    residual: float = 0.0
    term_norms: tuple[float, ...] = field(default=(), repr=False)


@dataclass
class _Series:
    phi: np.ndarray
    terms_used: int
    last_norm: float
    term_norms: list[float]
    closing: KernelPass


def _sum_series(ctx: OperatorContext, center: complex, order: int, tol: float | None, max_terms: int | None) -> _Series:
    numerics = get_config().numerics
    tol = numerics.cauchy_tol if tol is None else tol
    max_terms = numerics.max_terms if max_terms is None else max_terms
    center = complex(center)

    if not ctx.is_trivial and abs(center) <= ctx.effective_bound:
        raise AdmissibilityError(
            f"|z| = {abs(center):.6g} does not exceed the potential bound {ctx.effective_bound:.6g}"
        )

    cos_j, sin_j = kernel_jets(ctx, center, order)
    inv_z = jets.reciprocal(jets.variable(center, order))

    term = cos_j
    phi = term.copy()
    norm0 = float(np.max(np.abs(term)))
    norms = [norm0]
    terms_used = 1
    last = 0.0
    streak = 0
    if not ctx.is_trivial:
        for j in range(1, max_terms + 1):
            term = jets.jet_mul(KernelPass(ctx, term, cos_j, sin_j).M(), inv_z)
            last = float(np.max(np.abs(term)))
            phi += term
            terms_used += 1
            norms.append(last)
            if last < tol * norm0:
                break
            ratio = last / norms[-2] if norms[-2] else math.inf
            streak = streak + 1 if ratio >= 1.0 else 0
            if streak >= _DIVERGENT_STREAK:
                raise ConvergenceError(f"Neumann series diverges at z={center:.6g}", ratio=ratio)
            if j == max_terms:
                raise ConvergenceError(
                    f"Neumann series not converged after {max_terms} terms at z={center:.6g}",
                    ratio=ratio,
                )
        logger.debug("Neumann series at z=%s: %d terms, last norm %.3g", center, terms_used, last)

    closing = KernelPass(ctx, phi, cos_j, sin_j)
    return _Series(phi, terms_used, last, norms, closing)


def solve_cauchy(
    ctx: OperatorContext,
    z: complex,
    tol: float | None = None,
    max_terms: int | None = None,
) -> CauchySolution:
    """
    Solve phi = Phi + M phi / z by the operator Neumann series.

    Args:
        ctx: operator context
        z: spectral parameter, |z| above the potential bound
        tol: truncation threshold relative to the first term's sup-norm
        max_terms: term cap

    Returns:
        CauchySolution with the integral-equation residual recorded.
    """
    tol = get_config().numerics.cauchy_tol if tol is None else tol
    series = _sum_series(ctx, z, 0, tol, max_terms)
    phi = series.phi[:, 0]
    z = complex(z)
    residual = 0.0
    if not ctx.is_trivial:
        # Phi + M phi / z - phi
        defect = np.cos(z * ctx.grid.nodes) + series.closing.M()[:, 0] / z - phi
        residual = float(np.max(np.abs(defect)))
        if residual > 10 * tol * series.term_norms[0]:
            logger.warning("Cauchy residual %.3g exceeds 10*tol at z=%s", residual, z)
    return CauchySolution(
        z=z,
        phi=GridFunction(ctx.grid, phi),
        terms_used=series.terms_used,
        last_term_norm=series.last_norm,
        residual=residual,
        term_norms=tuple(series.term_norms),
    )


def char_fn(ctx: OperatorContext, z: complex, tol: float | None = None) -> complex:
    """phi'(1, z) = -z sin z + (L phi)(1, z)."""
    z = complex(z)
    series = _sum_series(ctx, z, 0, tol, None)
    return complex(-z * np.sin(z) + series.closing.L_end()[0])


def char_fn_jet(ctx: OperatorContext, center: complex, order: int, tol: float | None = None) -> TaylorJet:
    """Taylor jet of char_fn about center."""
    jets.check_order(order)
    center = complex(center)
    series = _sum_series(ctx, center, order, tol, None)
    _, sin_1 = jets.trig(center, 1.0, order)
    free = -jets.jet_mul(jets.variable(center, order), sin_1)
    return TaylorJet(center, free + series.closing.L_end())


def eigenfunction(ctx: OperatorContext, z_root: complex, tol: float | None = None) -> GridFunction:
    """
    phi(., z_root) with unit discrete L2 norm, phased so <phi, cos(pi n .)> >= 0.

    Raises:
        NotARootError: |char_fn(z_root)| exceeds the root tolerance.
    """
    numerics = get_config().numerics
    tol = numerics.root_tol if tol is None else tol
    z_root = complex(z_root)
    value = char_fn(ctx, z_root)
    if abs(value) > tol * max(1.0, abs(z_root)):
        raise NotARootError(f"|char_fn({z_root:.6g})| = {abs(value):.3g} exceeds root tolerance")

    phi = solve_cauchy(ctx, z_root).phi.values
    nodes = ctx.grid.nodes
    w = weights(ctx.grid)
    norm = math.sqrt(float(np.sum(w * np.abs(phi) ** 2)))
    n = max(0, int(round(z_root.real / math.pi)))
    inner = complex(np.sum(w * phi * np.cos(math.pi * n * nodes)))
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return GridFunction(ctx.grid, phi * np.conj(phase) / norm)
