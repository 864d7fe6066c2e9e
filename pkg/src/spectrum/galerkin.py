"""Galerkin oracle in the Neumann cosine basis."""
import logging
import math

import numpy as np
import scipy.linalg

from src.core.config import get_config
from src.core.errors import ConfigError, EigenSolverError, RefinementError
from src.core.types import DenseMatrix, RealArray
from src.problem.grid import weights
from src.problem.nonlocal_op import OperatorContext
from src.problem.potential import evaluate
from src.spectrum.models import EigenvalueRecord, Method

logger = logging.getLogger(__name__)


def cosine_basis(K: int, x: RealArray) -> RealArray:
    """Rows psi_0 = 1, psi_k = sqrt(2) cos(pi k x) for k < K."""
    k = np.arange(K)[:, None]
    psi = math.sqrt(2.0) * np.cos(math.pi * k * np.asarray(x)[None, :])
    psi[0] = 1.0
    return psi


def assemble(ctx: OperatorContext, K: int) -> DenseMatrix:
    """A_km = (pi k)^2 delta_km + <B psi_m, psi_k>."""
    if K < 8:
        raise ConfigError(f"Galerkin size K={K} below minimum 8")
    grid = ctx.grid
    x = grid.nodes
    A = np.diag((math.pi * np.arange(K)) ** 2).astype(complex)
    if ctx.is_trivial:
        return A

    psi = cosine_basis(K, x)
    w_v = weights(grid, 0, grid.v_end) * evaluate(ctx.V, x)
    w_q = weights(grid, grid.q_start) * evaluate(ctx.Q, x)
    # translated basis rows are evaluated in closed form; weights vanish off-support
    A += (psi * w_v) @ cosine_basis(K, x + ctx.alpha).T
    A += (psi * w_q) @ cosine_basis(K, x - ctx.beta).T
    return A


def dense_eigs(A: DenseMatrix) -> np.ndarray:
    """All eigenvalues, ascending by modulus, ties by real then imaginary part."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ConfigError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise EigenSolverError("matrix has non-finite entries")
    try:
        # LAPACK geev: balancing, Hessenberg reduction, shifted QR
        eigs = scipy.linalg.eigvals(A)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"dense eigenvalue routine failed: {e}") from e
    order = np.lexsort((eigs.imag, eigs.real, np.abs(eigs)))
    return eigs[order]


def galerkin_eigenvalues(
    ctx: OperatorContext,
    K: int | None = None,
    n_max: int | None = None,
) -> list[EigenvalueRecord]:
    """
    Eigenvalues 0..n_max from the K-dimensional section, checked against 2K.

    Raises:
        ConfigError: n_max exceeds K/4.
        RefinementError: an eigenvalue moved by more than the refinement tolerance.
    """
    numerics = get_config().numerics
    K = numerics.galerkin_K if K is None else K
    n_max = K // 4 if n_max is None else n_max
    if n_max > K / 4:
        raise ConfigError(f"n_max={n_max} exceeds K/4 for K={K}; increase --K")

    coarse = dense_eigs(assemble(ctx, K))
    fine = dense_eigs(assemble(ctx, 2 * K))
    records = []
    for n in range(n_max + 1):
        residual = float(abs(coarse[n] - fine[n]))
        if residual > numerics.refinement_tol:
            raise RefinementError(
                f"eigenvalue changed by {residual:.3g} from K={K} to K={2 * K}",
                n=n,
                method=Method.GALERKIN.value,
            )
        records.append(EigenvalueRecord(n=n, lam=complex(coarse[n]), method=Method.GALERKIN, residual=residual))
    logger.debug("Galerkin K=%d: %d eigenvalues, max refinement change %.3g",
                 K, len(records), max(r.residual for r in records))
    return records
