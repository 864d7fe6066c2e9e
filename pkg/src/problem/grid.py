"""Breakpoint-aware grids and composite trapezoid quadrature on [0, 1]."""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from src.core.errors import ConfigError
from src.core.types import ComplexArray, RealArray

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 16
_ALIGN_TOL = 1e-9
_MERGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Grid:
    """Ascending nodes on [0, 1] with 1 - alpha and beta among them."""
    nodes: RealArray
    alpha: float
    beta: float
    spacing: float | None = None
    """Uniform node spacing when the grid is uniform, else None."""
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        if nodes[0] != 0.0 or nodes[-1] != 1.0 or np.any(np.diff(nodes) <= 0):
            raise ConfigError("grid nodes must increase strictly from 0 to 1")
        for point in (1.0 - self.alpha, self.beta):
            self._index[point] = self._locate(point)

    def __len__(self) -> int:
        return len(self.nodes)

    def _locate(self, point: float) -> int:
        i = int(np.argmin(np.abs(self.nodes - point)))
        if abs(self.nodes[i] - point) > _MERGE_TOL:
            raise ConfigError(f"breakpoint {point} is not a grid node")
        return i

    @property
    def is_uniform(self) -> bool:
        return self.spacing is not None

    @property
    def v_end(self) -> int:
        """Index of 1 - alpha, the right end of the V-term support."""
        return self._index[1.0 - self.alpha]

    @property
    def q_start(self) -> int:
        """Index of beta, the left end of the Q-term support."""
        return self._index[self.beta]

    def compatible(self, other: "Grid") -> bool:
        return other is self or (
            len(other) == len(self) and np.array_equal(other.nodes, self.nodes)
        )


@dataclass(frozen=True)
class GridFunction:
    """
    Complex samples on a grid.

    values has shape (G,) for plain functions and (G, order + 1) for
    jet-valued functions carrying Taylor coefficients in z.
    """
    grid: Grid
    values: ComplexArray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape[0] != len(self.grid):
            raise ConfigError(
                f"grid function has {values.shape[0]} values for {len(self.grid)} nodes"
            )
        object.__setattr__(self, "values", values)

    @property
    def is_jet(self) -> bool:
        return self.values.ndim == 2

    @property
    def order(self) -> int:
        return self.values.shape[1] - 1 if self.is_jet else 0

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar: complex) -> "GridFunction":
        return GridFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def _aligned_count(alpha: float, beta: float, resolution: int) -> int | None:
    """Smallest m in [resolution, 2*resolution] with alpha*m and beta*m integral."""
    for m in range(resolution, 2 * resolution + 1):
        if all(abs(s * m - round(s * m)) <= _ALIGN_TOL * m for s in (alpha, beta)):
            return m
    return None


def make_grid(alpha: float, beta: float, resolution: int) -> Grid:
    """
    Build a near-uniform grid with 0, 1, 1 - alpha and beta as nodes.

    A uniform grid is used whenever alpha and beta fall on its nodes, which
    turns both translations into exact index shifts. Otherwise each segment
    cut by the breakpoints is filled uniformly with spacing <= 1/resolution.
    """
    if resolution < MIN_RESOLUTION:
        raise ConfigError(f"grid resolution {resolution} below minimum {MIN_RESOLUTION}")
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError("alpha out of [0,1]")
    if not 0.0 <= beta <= 1.0:
        raise ConfigError("beta out of [0,1]")

    m = _aligned_count(alpha, beta, resolution)
    if m is not None:
        nodes = np.arange(m + 1, dtype=float) / m
        nodes[-1] = 1.0
        # snap breakpoints so they compare exactly equal
        for point in (1.0 - alpha, beta):
            nodes[int(round(point * m))] = point
        logger.debug("uniform grid with %d intervals for alpha=%s beta=%s", m, alpha, beta)
        return Grid(nodes, alpha, beta, spacing=1.0 / m)

    cuts = sorted({0.0, 1.0, 1.0 - alpha, beta})
    pieces = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo <= _MERGE_TOL:
            continue
        count = max(1, math.ceil((hi - lo) * resolution - _ALIGN_TOL))
        pieces.append(np.linspace(lo, hi, count + 1)[:-1])
    nodes = np.concatenate(pieces + [np.array([1.0])])
    logger.debug("segmented grid with %d intervals for alpha=%s beta=%s", len(nodes) - 1, alpha, beta)
    return Grid(nodes, alpha, beta)


def weights(grid: Grid, a_index: int = 0, b_index: int | None = None) -> RealArray:
    """Trapezoid weights for the node range [a_index, b_index], zero elsewhere."""
    last = len(grid) - 1
    if b_index is None:
        b_index = last
    if not 0 <= a_index <= b_index <= last:
        raise ConfigError(f"index range [{a_index}, {b_index}] invalid for {len(grid)} nodes")
    w = np.zeros(len(grid))
    h = np.diff(grid.nodes[a_index:b_index + 1])
    w[a_index:b_index] += h / 2
    w[a_index + 1:b_index + 1] += h / 2
    return w


def integrate(f: GridFunction, a_index: int = 0, b_index: int | None = None) -> complex:
    """Composite trapezoid integral of f between two nodes."""
    last = len(f.grid) - 1
    if b_index is None:
        b_index = last
    if not 0 <= a_index <= b_index <= last:
        raise ConfigError(f"index range [{a_index}, {b_index}] invalid for {len(f.grid)} nodes")
    if a_index == b_index:
        return 0j
    x = f.grid.nodes[a_index:b_index + 1]
    return complex(trapezoid(f.values[a_index:b_index + 1], x, axis=0))


def cumulative(values: ComplexArray, grid: Grid, a_index: int = 0, b_index: int | None = None) -> ComplexArray:
    """
    Running trapezoid integral of values supported on [a_index, b_index].

    Zero before a_index, cumulative inside the support and constant after
    b_index, so a jump at either end never enters a panel. A trailing
    coefficient axis is carried along.
    """
    last = len(grid) - 1
    if b_index is None:
        b_index = last
    out = np.zeros(values.shape, dtype=complex)
    if b_index > a_index:
        x = grid.nodes[a_index:b_index + 1]
        out[a_index:b_index + 1] = cumulative_trapezoid(
            values[a_index:b_index + 1], x, axis=0, initial=0
        )
        out[b_index + 1:] = out[b_index]
    return out
