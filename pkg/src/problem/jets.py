"""
Truncated Taylor jets in (z - center).

Coefficients are plain Taylor coefficients c_m = f^(m)(center) / m!.
Array helpers work on any leading shape with the coefficient axis last,
so grid functions of jets are arrays of shape (G, order + 1).
"""
import math
from dataclasses import dataclass

import numpy as np

from src.core.config import get_config
from src.core.errors import ConfigError
from src.core.types import ComplexArray

JET_ORDER_CAP = 12


def check_order(order: int) -> None:
    cap = min(JET_ORDER_CAP, get_config().numerics.jet_order_cap)
    if not 0 <= order <= cap:
        raise ConfigError(f"jet order {order} outside [0, {cap}]")


def jet_mul(a: ComplexArray, b: ComplexArray) -> ComplexArray:
    """Truncated Cauchy product along the last axis."""
    size = a.shape[-1]
    if b.shape[-1] != size:
        raise ConfigError(f"jet order mismatch: {size - 1} vs {b.shape[-1] - 1}")
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for m in range(size):
        for i in range(m + 1):
            out[..., m] += a[..., i] * b[..., m - i]
    return out


def variable(center: complex, order: int) -> ComplexArray:
    """Jet of z itself."""
    out = np.zeros(order + 1, dtype=complex)
    out[0] = center
    if order:
        out[1] = 1.0
    return out


def reciprocal(a: ComplexArray) -> ComplexArray:
    """Jet of 1/a, a[..., 0] != 0."""
    size = a.shape[-1]
    out = np.zeros(a.shape, dtype=complex)
    out[..., 0] = 1.0 / a[..., 0]
    for m in range(1, size):
        acc = np.zeros(a.shape[:-1], dtype=complex)
        for i in range(1, m + 1):
            acc = acc + a[..., i] * out[..., m - i]
        out[..., m] = -acc / a[..., 0]
    return out


def trig(center: complex, x, order: int) -> tuple[ComplexArray, ComplexArray]:
    """
    Jets of cos(z x) and sin(z x) about z = center for every x.

    Returns arrays of shape x.shape + (order + 1,).
    """
    x = np.asarray(x, dtype=float)
    theta = center * x
    c, s = np.cos(theta), np.sin(theta)
    # derivatives of cos cycle through cos, -sin, -cos, sin (sin is shifted by one)
    cos_cycle = (c, -s, -c, s)
    sin_cycle = (s, c, -s, -c)
    cos_jet = np.empty(x.shape + (order + 1,), dtype=complex)
    sin_jet = np.empty(x.shape + (order + 1,), dtype=complex)
    power = np.ones_like(x)
    for m in range(order + 1):
        scale = power / math.factorial(m)
        cos_jet[..., m] = scale * cos_cycle[m % 4]
        sin_jet[..., m] = scale * sin_cycle[m % 4]
        power = power * x
    return cos_jet, sin_jet


@dataclass(frozen=True)
class TaylorJet:
    """Truncated power series sum_m coeffs[m] (z - center)^m."""
    center: complex
    coeffs: ComplexArray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex).reshape(-1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def coefficient(self, m: int) -> complex:
        """c_m = f^(m)(center) / m!."""
        if m > self.order:
            raise ConfigError(f"jet of order {self.order} has no coefficient {m}")
        return complex(self.coeffs[m])

    def derivative(self, m: int) -> complex:
        """f^(m)(center) = m! c_m."""
        return math.factorial(m) * self.coefficient(m)

    def truncate(self, order: int) -> "TaylorJet":
        if order > self.order:
            raise ConfigError(f"cannot raise jet order {self.order} to {order}")
        return TaylorJet(self.center, self.coeffs[: order + 1])

    def __call__(self, z: complex) -> complex:
        """Evaluate the truncated series at z."""
        return complex(np.polyval(self.coeffs[::-1], z - self.center))

    def _check(self, other: "TaylorJet") -> None:
        if other.order != self.order or other.center != self.center:
            raise ConfigError("jets differ in order or center")

    def __add__(self, other: "TaylorJet") -> "TaylorJet":
        self._check(other)
        return TaylorJet(self.center, self.coeffs + other.coeffs)

    def __sub__(self, other: "TaylorJet") -> "TaylorJet":
        self._check(other)
        return TaylorJet(self.center, self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, TaylorJet):
            self._check(other)
            return TaylorJet(self.center, jet_mul(self.coeffs, other.coeffs))
        return TaylorJet(self.center, self.coeffs * other)

    __rmul__ = __mul__

    def __neg__(self) -> "TaylorJet":
        return TaylorJet(self.center, -self.coeffs)
