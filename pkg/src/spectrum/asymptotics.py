"""Explicit two- and four-term eigenvalue asymptotics and the localization curve."""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.errors import ConfigError
from src.problem.grid import GridFunction, integrate
from src.problem.nonlocal_op import OperatorContext
from src.problem.potential import evaluate
from src.spectrum.models import EigenvalueRecord, Method

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AsymptoticTerms:
    """G_{n,1..6} and the combinations entering the four-term formula."""
    n: int
    G: tuple[complex, complex, complex, complex, complex, complex]
    lambda1: complex
    lambda2: complex | None = None
    """None when a potential lacks second derivatives."""


def _v_integral(ctx: OperatorContext, values) -> complex:
    return integrate(GridFunction(ctx.grid, np.asarray(values, dtype=complex)), 0, ctx.grid.v_end)


def _q_integral(ctx: OperatorContext, values) -> complex:
    return integrate(GridFunction(ctx.grid, np.asarray(values, dtype=complex)), ctx.grid.q_start)


def translation_integrals(ctx: OperatorContext) -> tuple[complex, complex]:
    """v = int_0^{1-alpha} V and q = int_beta^1 Q."""
    x = ctx.grid.nodes
    return _v_integral(ctx, evaluate(ctx.V, x)), _q_integral(ctx, evaluate(ctx.Q, x))


def _has_second_derivatives(ctx: OperatorContext) -> bool:
    return min(ctx.V.derivative_order_available, ctx.Q.derivative_order_available) >= 2


def _curvature_terms(ctx: OperatorContext, n: int) -> complex:
    """Boundary first-derivative terms minus the second-derivative oscillatory integrals."""
    a, b, w = ctx.alpha, ctx.beta, math.pi * n
    x = ctx.grid.nodes
    V, Q = ctx.V, ctx.Q
    boundary = (evaluate(V, 1 - a, 1) - evaluate(V, 0.0, 1)) * math.cos(w * a)
    boundary += (evaluate(Q, 1.0, 1) - evaluate(Q, b, 1)) * math.cos(w * b)
    v2 = _v_integral(ctx, evaluate(V, x, 2) * np.cos(w * (2 * x + a)))
    q2 = _q_integral(ctx, evaluate(Q, x, 2) * np.cos(w * (2 * x - b)))
    return complex(boundary - v2 - q2)


def compute_G(ctx: OperatorContext, n: int) -> AsymptoticTerms:
    """
    The six G values at index n with Lambda_1 and, when derivatives allow, Lambda_2.

    Only values of V and Q are needed for G; Lambda_2 also uses V', V'', Q', Q''.
    """
    if n < 1:
        raise ConfigError(f"asymptotic index n must be >= 1, got {n}")
    a, b, w = ctx.alpha, ctx.beta, math.pi * n
    v, q = translation_integrals(ctx)
    ca, sa = math.cos(w * a), math.sin(w * a)
    cb, sb = math.cos(w * b), math.sin(w * b)
    v_ends = complex(evaluate(ctx.V, 1 - a) + evaluate(ctx.V, 0.0))
    q_ends = complex(evaluate(ctx.Q, 1.0) + evaluate(ctx.Q, b))

    g1 = ca * v + cb * q
    g2 = (a + 1) * sa * v + (b - 1) * sb * q
    g3 = (a + 1) ** 2 * ca * v + (b - 1) ** 2 * cb * q
    g4 = -v_ends * sa - q_ends * sb
    g5 = (a - 1) * v_ends * ca + (b - 1) * q_ends * cb
    g6 = complex(evaluate(ctx.V, 1 - a)) * (-sa * v + sb * q) * sa
    lambda1 = g4 - g1 * g2

    lambda2 = None
    if _has_second_derivatives(ctx):
        lambda2 = (
            g1**3 / 6
            + g1 * g2**2
            - g3 * g1**2 / 2
            - 2 * g1**2
            - g1 * g5
            - g2 * g4
            + 4 * g6
            + _curvature_terms(ctx, n)
        )
    return AsymptoticTerms(n, (g1, g2, g3, g4, g5, g6), lambda1, lambda2)


def lambda_two_term(ctx: OperatorContext, n: int) -> EigenvalueRecord:
    """pi^2 n^2 plus the translated-cosine integrals of V and Q; error O(1/n)."""
    if n < 1:
        raise ConfigError(f"asymptotic index n must be >= 1, got {n}")
    a, b, w = ctx.alpha, ctx.beta, math.pi * n
    x = ctx.grid.nodes
    correction = 2 * _v_integral(ctx, evaluate(ctx.V, x) * np.cos(w * x) * np.cos(w * (x + a)))
    correction += 2 * _q_integral(ctx, evaluate(ctx.Q, x) * np.cos(w * x) * np.cos(w * (x - b)))
    return EigenvalueRecord(n=n, lam=complex(w * w + correction), method=Method.ASYMPTOTIC2)


def lambda_four_term(ctx: OperatorContext, n: int) -> EigenvalueRecord:
    """
    pi^2 n^2 + G_1 + Lambda_1/(2 pi n) + Lambda_2/(4 pi^2 n^2).

    Raises:
        ConfigError: V or Q does not provide two derivatives.
    """
    if not _has_second_derivatives(ctx):
        raise ConfigError(
            "four-term asymptotics need second derivatives of V and Q "
            f"(available: V={ctx.V.derivative_order_available}, Q={ctx.Q.derivative_order_available})"
        )
    terms = compute_G(ctx, n)
    w = math.pi * n
    lam = w * w + terms.G[0] + terms.lambda1 / (2 * w) + terms.lambda2 / (4 * w * w)
    return EigenvalueRecord(n=n, lam=complex(lam), method=Method.ASYMPTOTIC4)


def gamma_curve(ctx: OperatorContext, t_samples) -> np.ndarray:
    """t^2 + v cos(t alpha) + q cos(t beta) at each sample."""
    t = np.asarray(t_samples, dtype=float)
    v, q = translation_integrals(ctx)
    return t * t + v * np.cos(t * ctx.alpha) + q * np.cos(t * ctx.beta)


def f0_expansion(ctx: OperatorContext, n: int) -> tuple[complex, complex, complex]:
    """
    Leading-order predictions of f_0, d/dz f_0 and d^2/dz^2 f_0 at pi n.

    f_0 is accurate to O(n^-3), its first derivative to O(n^-2) and the
    second derivative to O(n^-1).
    """
    terms = compute_G(ctx, n)
    g1, g2, g3, g4, g5, _ = terms.G
    sign = -1 if n % 2 else 1
    w = math.pi * n
    tail = _curvature_terms(ctx, n) / (4 * w * w) if _has_second_derivatives(ctx) else 0j
    f0 = sign / 2 * (g1 + g4 / (2 * w) + tail)
    df0 = -sign / 2 * (g2 + g5 / (2 * w))
    d2f0 = -sign * g3 / 2
    return complex(f0), complex(df0), complex(d2f0)
