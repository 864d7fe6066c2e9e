"""Core type definitions."""
import numpy as np
from numpy.typing import NDArray

RealArray = NDArray[np.float64]
"""Real samples, e.g. grid nodes and quadrature weights."""

ComplexArray = NDArray[np.complex128]
"""Complex samples; a trailing axis, when present, holds Taylor coefficients."""

DenseMatrix = NDArray[np.complex128]
"""Square complex matrix in row-major order."""
