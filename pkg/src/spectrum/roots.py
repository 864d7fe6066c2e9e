"""Root boxes, Newton refinement, winding-number census and shooting eigenvalues."""
import logging
import math
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from src.core.config import get_config
from src.core.errors import (
    AdmissibilityError,
    BoundaryRootError,
    ConvergenceError,
    RootEscapeError,
)
from src.core.parallel import ordered_map
from src.problem.nonlocal_op import OperatorContext
from src.spectrum.cauchy import char_fn, char_fn_jet
from src.spectrum.galerkin import galerkin_eigenvalues
from src.spectrum.models import EigenvalueRecord, Method

logger = logging.getLogger(__name__)

_BOUNDARY_ZERO = 1e-6
_MAX_SAMPLE_DOUBLINGS = 3
_ENLARGE_FACTOR = 1.5
_ENLARGE_RETRIES = 3


@dataclass(frozen=True)
class RootBox:
    """Rectangle re_lo < Re z < re_hi, |Im z| <= im_half_height around pi n."""
    n: int
    re_lo: float
    re_hi: float
    im_half_height: float

    def __post_init__(self):
        if not self.re_lo < self.re_hi or self.im_half_height <= 0:
            raise ValueError("degenerate root box")

    def contains(self, z: complex) -> bool:
        return self.re_lo < z.real < self.re_hi and abs(z.imag) < self.im_half_height

    def enlarged(self, factor: float) -> "RootBox":
        return replace(self, im_half_height=self.im_half_height * factor)

    def contour(self, samples: int) -> np.ndarray:
        """Counterclockwise boundary points, at least `samples` of them, closed."""
        w = self.re_hi - self.re_lo
        h = 2 * self.im_half_height
        perimeter = 2 * (w + h)
        counts = [max(16, math.ceil(samples * side / perimeter)) for side in (w, h, w, h)]
        lo, hi, top = self.re_lo, self.re_hi, self.im_half_height
        corners = [complex(lo, -top), complex(hi, -top), complex(hi, top), complex(lo, top)]
        points = []
        for k, count in enumerate(counts):
            a, b = corners[k], corners[(k + 1) % 4]
            t = np.arange(count) / count
            points.append(a + (b - a) * t)
        ring = np.concatenate(points)
        return np.append(ring, ring[0])


def make_box(n: int, v_bound: float, min_half_height: float | None = None) -> RootBox:
    """The rectangle around pi n with half-height sqrt(2) * v_bound (at least the configured minimum)."""
    if min_half_height is None:
        min_half_height = get_config().numerics.min_box_half_height
    half = max(math.sqrt(2.0) * v_bound, min_half_height)
    return RootBox(n, math.pi * n - math.pi / 2, math.pi * n + math.pi / 2, half)


def is_admissible(ctx: OperatorContext, box: RootBox) -> bool:
    """Contraction of M/z on the whole box."""
    if ctx.is_trivial:
        return True
    return ctx.effective_bound * math.exp(box.im_half_height) / box.re_lo < 1.0


def find_root(ctx: OperatorContext, box: RootBox, tol: float | None = None) -> EigenvalueRecord:
    """
    Newton iteration from pi n with the jet derivative of char_fn.

    Raises:
        AdmissibilityError: the box is outside the contraction regime.
        RootEscapeError: an iterate left the box.
        ConvergenceError: no convergence within the step cap.
    """
    numerics = get_config().numerics
    tol = numerics.root_tol if tol is None else tol
    n = box.n
    z = complex(math.pi * n)

    if ctx.is_trivial:
        residual = abs(-z * np.sin(z))
        return EigenvalueRecord(n=n, lam=z * z, method=Method.SHOOTING, residual=float(residual), z=z)
    if not is_admissible(ctx, box):
        raise AdmissibilityError("contraction fails on the root box", n=n, method=Method.SHOOTING.value)

    for step in range(numerics.newton_max_steps):
        jet = char_fn_jet(ctx, z, 1)
        value, slope = jet.coeffs
        if slope == 0:
            raise ConvergenceError("vanishing derivative in Newton step", n=n, method=Method.SHOOTING.value)
        delta = value / slope
        z = z - delta
        if not box.contains(z):
            raise RootEscapeError(f"Newton iterate {z:.6g} left the box", n=n, method=Method.SHOOTING.value)
        if abs(delta) <= numerics.newton_step_tol * max(1.0, abs(z)):
            logger.debug("n=%d: Newton converged in %d steps to z=%s", n, step + 1, z)
            break
    else:
        raise ConvergenceError(
            f"Newton did not converge in {numerics.newton_max_steps} steps",
            n=n,
            method=Method.SHOOTING.value,
        )

    residual = abs(char_fn(ctx, z))
    if residual > tol * max(1.0, abs(z)):
        raise ConvergenceError(f"root residual {residual:.3g} above tolerance", n=n, method=Method.SHOOTING.value)
    record = EigenvalueRecord(n=n, lam=z * z, method=Method.SHOOTING, residual=float(residual), z=z)
    if not record.within_enclosure(ctx.full_bound):
        logger.warning("n=%d: shooting eigenvalue %s outside the spectral enclosure", n, record.lam)
    return record


def _winding(values: np.ndarray) -> tuple[int, float]:
    steps = np.angle(values[1:] / values[:-1])
    return int(round(float(np.sum(steps)) / (2 * math.pi))), float(np.max(np.abs(steps)))


def count_roots(ctx: OperatorContext, box: RootBox, samples: int | None = None) -> int:
    """
    Winding number of char_fn along the box boundary.

    Raises:
        BoundaryRootError: char_fn nearly vanishes on the boundary.
    """
    if samples is None:
        samples = get_config().numerics.boundary_samples
    samples = max(samples, 256)
    for _ in range(_MAX_SAMPLE_DOUBLINGS + 1):
        points = box.contour(samples)
        values = np.array([char_fn(ctx, p) for p in points[:-1]])
        values = np.append(values, values[0])
        scale = float(np.max(np.abs(values)))
        if float(np.min(np.abs(values))) <= _BOUNDARY_ZERO * scale:
            raise BoundaryRootError("characteristic function vanishes near the box boundary", n=box.n)
        winding, largest_step = _winding(values)
        if largest_step < math.pi / 2:
            return winding
        samples *= 2
    logger.warning("n=%d: phase still under-resolved with %d samples", box.n, samples)
    return winding


def count_with_retries(ctx: OperatorContext, box: RootBox) -> int:
    """count_roots, enlarging the box height when it touches a root."""
    for _ in range(_ENLARGE_RETRIES):
        try:
            return count_roots(ctx, box)
        except BoundaryRootError:
            box = box.enlarged(_ENLARGE_FACTOR)
            logger.info("n=%d: enlarging box to half-height %.3g", box.n, box.im_half_height)
    return count_roots(ctx, box)


def find_n_check(ctx: OperatorContext, n_max: int) -> int | None:
    """Smallest n <= n_max whose box is admissible and holds exactly one root."""
    for n in range(1, n_max + 1):
        box = make_box(n, ctx.full_bound)
        if not is_admissible(ctx, box):
            continue
        if ctx.is_trivial or count_with_retries(ctx, box) == 1:
            logger.info("uniform regime starts at n_check=%d", n)
            return n
    return None


def _count_for_n(ctx: OperatorContext, n: int) -> tuple[int, int]:
    return n, count_with_retries(ctx, make_box(n, ctx.full_bound))


def census(ctx: OperatorContext, n_lo: int, n_hi: int, jobs: int | None = 1) -> list[tuple[int, int]]:
    """Root counts for every box n_lo..n_hi."""
    return ordered_map(partial(_count_for_n, ctx), range(n_lo, n_hi + 1), jobs)


def _shoot(ctx: OperatorContext, n: int) -> EigenvalueRecord:
    return find_root(ctx, make_box(n, ctx.full_bound))


def uniform_regime(
    ctx: OperatorContext,
    n_lo: int,
    n_hi: int,
    K: int | None = None,
    n_check: int | None = None,
) -> tuple[int, list[EigenvalueRecord]]:
    """
    First index handled by a root method, plus Galerkin records for the indices below it.

    n_check is searched up to n_hi when not given.
    """
    if n_check is None:
        n_check = find_n_check(ctx, n_hi)
    first = n_hi + 1 if n_check is None else max(n_lo, n_check)
    if first <= n_lo:
        return n_lo, []
    logger.info("n < %d below the uniform regime, reporting Galerkin values", first)
    fallback = galerkin_eigenvalues(ctx, K, first - 1)
    return first, [r for r in fallback if n_lo <= r.n < first]


def shooting_eigenvalues(
    ctx: OperatorContext,
    n_lo: int,
    n_hi: int,
    K: int | None = None,
    jobs: int | None = 1,
    n_check: int | None = None,
) -> list[EigenvalueRecord]:
    """Shooting records for n_lo..n_hi; indices below n_check come from Galerkin."""
    first, records = uniform_regime(ctx, n_lo, n_hi, K, n_check)
    records.extend(ordered_map(partial(_shoot, ctx), range(first, n_hi + 1), jobs))
    return records
