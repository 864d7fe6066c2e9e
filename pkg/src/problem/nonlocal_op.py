"""
The nonlocal free term B(alpha, beta) and the integral operators M, L.

    (B u)(x) = V(x) u(x + alpha)   for x + alpha <= 1
             + Q(x) u(x - beta)    for x - beta >= 0
    (M u)(x) = int_0^x (B u)(t) sin z(x - t) dt
    (L u)(x) = int_0^x (B u)(t) cos z(x - t) dt

Kernels are split with the angle-addition formulas so each application is
a single cumulative pass. All routines also run on jet-valued functions,
where every sample carries Taylor coefficients in (z - center).
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.core.config import get_config
from src.core.errors import ConfigError
from src.core.types import ComplexArray, RealArray
from src.problem import jets
from src.problem.grid import Grid, GridFunction, cumulative, make_grid
from src.problem.potential import Potential, evaluate, sup_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Shift:
    """Linear interpolation plan for u(x + offset) on a node range."""
    start: int
    stop: int
    left: np.ndarray
    theta: RealArray

    def apply(self, values: ComplexArray) -> ComplexArray:
        lo = values[self.left]
        hi = values[self.left + 1]
        theta = self.theta.reshape(self.theta.shape + (1,) * (values.ndim - 1))
        return lo * (1.0 - theta) + hi * theta


def _plan_shift(grid: Grid, start: int, stop: int, offset: float) -> _Shift:
    nodes = grid.nodes
    last = len(nodes) - 1
    if grid.is_uniform and abs(offset / grid.spacing - round(offset / grid.spacing)) < 1e-6:
        # node-aligned translation: pure index shift
        k = int(round(offset / grid.spacing))
        left = np.arange(start, stop + 1) + k
        theta = np.zeros(len(left))
        at_end = left >= last
        left[at_end] = last - 1
        theta[at_end] = 1.0
        return _Shift(start, stop, left, theta)

    targets = np.clip(nodes[start:stop + 1] + offset, 0.0, 1.0)
    left = np.clip(np.searchsorted(nodes, targets, side="right") - 1, 0, last - 1)
    theta = (targets - nodes[left]) / (nodes[left + 1] - nodes[left])
    return _Shift(start, stop, left, np.clip(theta, 0.0, 1.0))


@dataclass(frozen=True)
class OperatorContext:
    """Potentials, translations and the grid they live on."""
    V: Potential
    Q: Potential
    alpha: float
    beta: float
    grid: Grid
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.grid.alpha != self.alpha or self.grid.beta != self.beta:
            raise ConfigError("grid was built for different translations")
        nodes = self.grid.nodes
        last = len(nodes) - 1
        v_end, q_start = self.grid.v_end, self.grid.q_start
        cache = self._cache
        cache["v_active"] = not self.V.is_zero and v_end > 0
        cache["q_active"] = not self.Q.is_zero and q_start < last
        cache["v_vals"] = evaluate(self.V, nodes[: v_end + 1])
        cache["q_vals"] = evaluate(self.Q, nodes[q_start:])
        cache["v_shift"] = _plan_shift(self.grid, 0, v_end, self.alpha)
        cache["q_shift"] = _plan_shift(self.grid, q_start, last, -self.beta)
        cache["effective_bound"] = sup_norm(self.V, 0.0, 1.0 - self.alpha) + sup_norm(self.Q, self.beta, 1.0)
        cache["full_bound"] = sup_norm(self.V) + sup_norm(self.Q)

    @property
    def effective_bound(self) -> float:
        """sup of |V| on [0, 1-alpha] plus sup of |Q| on [beta, 1]; bounds the norm of B."""
        return self._cache["effective_bound"]

    @property
    def full_bound(self) -> float:
        """||V||_inf + ||Q||_inf, the constant of the spectral enclosure."""
        return self._cache["full_bound"]

    @property
    def is_trivial(self) -> bool:
        """B vanishes identically."""
        return not (self._cache["v_active"] or self._cache["q_active"])


def build_context(
    V: Potential,
    Q: Potential,
    alpha: float,
    beta: float,
    resolution: int | None = None,
) -> OperatorContext:
    """Create the grid for (alpha, beta) and bind the potentials to it."""
    if resolution is None:
        resolution = get_config().numerics.grid_resolution
    grid = make_grid(alpha, beta, resolution)
    return OperatorContext(V, Q, alpha, beta, grid)


def effective_bound(ctx: OperatorContext) -> float:
    return ctx.effective_bound


def contraction_ratio(ctx: OperatorContext, z: complex) -> float:
    """Bound on ||M u|| / (|z| ||u||) at z."""
    if ctx.is_trivial:
        return 0.0
    return ctx.effective_bound * math.exp(abs(z.imag)) / abs(z)


# --- core passes -------------------------------------------------------------

def _check_grid(ctx: OperatorContext, u: GridFunction) -> None:
    if not ctx.grid.compatible(u.grid):
        raise ConfigError("grid mismatch between operator context and grid function")


def _pieces(ctx: OperatorContext, values: ComplexArray) -> tuple[ComplexArray | None, ComplexArray | None]:
    """V- and Q-terms of B u, each zero outside its own support."""
    cache = ctx._cache
    trailing = (1,) * (values.ndim - 1)
    p = r = None
    if cache["v_active"]:
        shift: _Shift = cache["v_shift"]
        p = np.zeros(values.shape, dtype=complex)
        p[shift.start:shift.stop + 1] = cache["v_vals"].reshape((-1,) + trailing) * shift.apply(values)
    if cache["q_active"]:
        shift = cache["q_shift"]
        r = np.zeros(values.shape, dtype=complex)
        r[shift.start:shift.stop + 1] = cache["q_vals"].reshape((-1,) + trailing) * shift.apply(values)
    return p, r


def _moments(ctx: OperatorContext, values: ComplexArray, cos_j: ComplexArray, sin_j: ComplexArray):
    """Running integrals C(x) = int (Bu) cos zt and S(x) = int (Bu) sin zt (jet arrays)."""
    grid = ctx.grid
    p, r = _pieces(ctx, values)
    C = np.zeros(values.shape, dtype=complex)
    S = np.zeros(values.shape, dtype=complex)
    if p is not None:
        C += cumulative(jets.jet_mul(p, cos_j), grid, 0, grid.v_end)
        S += cumulative(jets.jet_mul(p, sin_j), grid, 0, grid.v_end)
    if r is not None:
        C += cumulative(jets.jet_mul(r, cos_j), grid, grid.q_start)
        S += cumulative(jets.jet_mul(r, sin_j), grid, grid.q_start)
    return C, S


class KernelPass:
    """
    One cumulative pass of B u against cos zt and sin zt.

    Holds the running moments so M u, L u and (L u)(1) share the work.
    """

    def __init__(self, ctx: OperatorContext, values: ComplexArray, cos_j: ComplexArray, sin_j: ComplexArray):
        self.cos_j = cos_j
        self.sin_j = sin_j
        self.trivial = ctx.is_trivial
        if self.trivial:
            self.C = self.S = None
        else:
            self.C, self.S = _moments(ctx, values, cos_j, sin_j)
        self.shape = values.shape

    def M(self) -> ComplexArray:
        if self.trivial:
            return np.zeros(self.shape, dtype=complex)
        return jets.jet_mul(self.sin_j, self.C) - jets.jet_mul(self.cos_j, self.S)

    def L(self) -> ComplexArray:
        if self.trivial:
            return np.zeros(self.shape, dtype=complex)
        return jets.jet_mul(self.cos_j, self.C) + jets.jet_mul(self.sin_j, self.S)

    def L_end(self) -> ComplexArray:
        """(L u)(1) as a single jet."""
        if self.trivial:
            return np.zeros(self.shape[1:], dtype=complex)
        return jets.jet_mul(self.cos_j[-1], self.C[-1]) + jets.jet_mul(self.sin_j[-1], self.S[-1])


def kernel_jets(ctx: OperatorContext, center: complex, order: int) -> tuple[ComplexArray, ComplexArray]:
    """Jets of cos(z x), sin(z x) on the grid about center."""
    return jets.trig(center, ctx.grid.nodes, order)


# --- public operations -------------------------------------------------------

def apply_B(ctx: OperatorContext, u: GridFunction) -> GridFunction:
    """Apply the translated free term; jets pass through coefficient-wise."""
    _check_grid(ctx, u)
    p, r = _pieces(ctx, u.values)
    out = np.zeros(u.values.shape, dtype=complex)
    if p is not None:
        out += p
    if r is not None:
        out += r
    return GridFunction(ctx.grid, out)


def _plain(ctx: OperatorContext, z: complex, u: GridFunction) -> KernelPass:
    _check_grid(ctx, u)
    if u.is_jet:
        raise ConfigError("plain operator applied to a jet-valued function")
    cos_j, sin_j = kernel_jets(ctx, complex(z), 0)
    return KernelPass(ctx, u.values[:, None], cos_j, sin_j)


def apply_M(ctx: OperatorContext, z: complex, u: GridFunction) -> GridFunction:
    """(M u)(x) = int_0^x (B u)(t) sin z(x - t) dt."""
    return GridFunction(ctx.grid, _plain(ctx, z, u).M()[:, 0])


def apply_L(ctx: OperatorContext, z: complex, u: GridFunction) -> GridFunction:
    """(L u)(x) = int_0^x (B u)(t) cos z(x - t) dt."""
    return GridFunction(ctx.grid, _plain(ctx, z, u).L()[:, 0])


def _jet_pass(ctx: OperatorContext, center: complex, order: int, u: GridFunction) -> KernelPass:
    _check_grid(ctx, u)
    jets.check_order(order)
    if not u.is_jet or u.order != order:
        raise ConfigError(f"jet order mismatch: function carries {u.order}, requested {order}")
    cos_j, sin_j = kernel_jets(ctx, complex(center), order)
    return KernelPass(ctx, u.values, cos_j, sin_j)


def apply_M_jet(ctx: OperatorContext, center: complex, order: int, u: GridFunction) -> GridFunction:
    """apply_M with the kernel expanded as a Taylor jet in (z - center)."""
    return GridFunction(ctx.grid, _jet_pass(ctx, center, order, u).M())


def as_jet(u: GridFunction, order: int) -> GridFunction:
    """Lift a plain function to a constant jet of the given order."""
    values = np.zeros((len(u.grid), order + 1), dtype=complex)
    values[:, 0] = u.values
    return GridFunction(u.grid, values)
