"""Complex potentials V, Q on [0, 1] and their string grammar."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from src.core.errors import ConfigError
from src.core.types import ComplexArray, RealArray

logger = logging.getLogger(__name__)

ANALYTIC_ORDER = 8
"""Derivative order declared by closed-form kinds."""

_X_SLACK = 1e-12
_NORM_SAMPLES = 4097


class PotentialKind(str, Enum):
    """How a potential is represented."""
    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"
    TRIGONOMETRIC = "trigonometric"
    TABULATED = "tabulated"
    SUM = "sum"


@dataclass(frozen=True)
class Potential:
    """
    Complex coefficient function on [0, 1].

    coefficients hold (c,) for constants, (c0, c1, ...) for polynomials and
    (a, k) for a*cos(k*pi*x). Tabulated potentials carry their samples in
    table_x/table_y, sums carry their terms in parts.
    """
    kind: PotentialKind
    coefficients: tuple[complex, ...] = ()
    derivative_order_available: int = ANALYTIC_ORDER
    table_x: tuple[float, ...] = ()
    table_y: tuple[complex, ...] = ()
    parts: tuple["Potential", ...] = field(default=())

    def __call__(self, x, deriv: int = 0) -> ComplexArray:
        return evaluate(self, x, deriv)

    @property
    def is_zero(self) -> bool:
        if self.kind == PotentialKind.SUM:
            return all(p.is_zero for p in self.parts)
        if self.kind == PotentialKind.TABULATED:
            return not any(self.table_y)
        if self.kind == PotentialKind.TRIGONOMETRIC:
            return self.coefficients[0] == 0
        return not any(self.coefficients)


def constant(value: complex) -> Potential:
    return Potential(PotentialKind.CONSTANT, (complex(value),))


def polynomial(*coeffs: complex) -> Potential:
    if not coeffs:
        raise ConfigError("polynomial needs at least one coefficient")
    return Potential(PotentialKind.POLYNOMIAL, tuple(complex(c) for c in coeffs))


def trigonometric(amplitude: complex, k: float) -> Potential:
    """a*cos(k*pi*x)."""
    return Potential(PotentialKind.TRIGONOMETRIC, (complex(amplitude), complex(k)))


def tabulated(x: RealArray, values: ComplexArray) -> Potential:
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=complex)
    if x.ndim != 1 or x.shape != values.shape or len(x) < 2:
        raise ConfigError("tabulated potential needs matching 1-d x and value arrays with >= 2 rows")
    if np.any(np.diff(x) <= 0):
        raise ConfigError("tabulated x must be strictly ascending")
    if x[0] > _X_SLACK or x[-1] < 1.0 - _X_SLACK:
        raise ConfigError("tabulated x must cover [0,1]")
    return Potential(
        PotentialKind.TABULATED,
        derivative_order_available=0,
        table_x=tuple(float(v) for v in x),
        table_y=tuple(complex(v) for v in values),
    )


def combine(*parts: Potential) -> Potential:
    """Term-wise sum of potentials."""
    if len(parts) == 1:
        return parts[0]
    return Potential(
        PotentialKind.SUM,
        derivative_order_available=min(p.derivative_order_available for p in parts),
        parts=tuple(parts),
    )


def evaluate(p: Potential, x, deriv: int = 0) -> ComplexArray:
    """
    Value of the deriv-th derivative of p at x (scalar or array).

    Raises:
        ConfigError: deriv exceeds p.derivative_order_available, or x leaves [0, 1].
    """
    if deriv < 0:
        raise ConfigError(f"derivative order must be >= 0, got {deriv}")
    if deriv > p.derivative_order_available:
        raise ConfigError(
            f"derivative order {deriv} unavailable for {p.kind.value} potential "
            f"(max {p.derivative_order_available})"
        )
    xs = np.asarray(x, dtype=float)
    if xs.size and (xs.min() < -_X_SLACK or xs.max() > 1.0 + _X_SLACK):
        raise ConfigError("x outside [0,1]")
    xs = np.clip(xs, 0.0, 1.0)
    out = np.asarray(_evaluate(p, xs, deriv))
    return out if out.ndim else out[()]


def _evaluate(p: Potential, xs: np.ndarray, deriv: int) -> np.ndarray:
    if p.kind == PotentialKind.CONSTANT:
        c = p.coefficients[0] if deriv == 0 else 0j
        return np.full(xs.shape, c, dtype=complex)
    if p.kind == PotentialKind.POLYNOMIAL:
        # numpy's poly helpers take the highest degree first
        coeffs = np.array(p.coefficients[::-1], dtype=complex)
        if deriv:
            coeffs = np.polyder(coeffs, deriv) if len(coeffs) > deriv else np.zeros(1, dtype=complex)
        return np.polyval(coeffs, xs).astype(complex)
    if p.kind == PotentialKind.TRIGONOMETRIC:
        a, k = p.coefficients
        w = k.real * math.pi
        # d^m/dx^m cos(wx) = w^m cos(wx + m pi/2)
        return a * w**deriv * np.cos(w * xs + deriv * math.pi / 2)
    if p.kind == PotentialKind.TABULATED:
        tx = np.asarray(p.table_x)
        ty = np.asarray(p.table_y)
        return np.interp(xs, tx, ty.real) + 1j * np.interp(xs, tx, ty.imag)
    if p.kind == PotentialKind.SUM:
        total = np.zeros(xs.shape, dtype=complex)
        for part in p.parts:
            total = total + _evaluate(part, xs, deriv)
        return total
    raise ConfigError(f"unknown potential kind {p.kind!r}")


def sup_norm(p: Potential, lo: float = 0.0, hi: float = 1.0) -> float:
    """sup |p| on [lo, hi]; zero for an empty interval."""
    lo, hi = max(0.0, lo), min(1.0, hi)
    if hi <= lo:
        return 0.0
    if p.kind == PotentialKind.CONSTANT:
        return abs(p.coefficients[0])
    if p.kind == PotentialKind.TRIGONOMETRIC and hi - lo >= 1.0 - _X_SLACK:
        return abs(p.coefficients[0])
    if p.kind == PotentialKind.TABULATED:
        tx = np.asarray(p.table_x)
        inside = (tx > lo) & (tx < hi)
        xs = np.concatenate(([lo, hi], tx[inside]))
        return float(np.max(np.abs(_evaluate(p, xs, 0))))
    xs = np.linspace(lo, hi, _NORM_SAMPLES)
    return float(np.max(np.abs(_evaluate(p, xs, 0))))


# --- grammar -----------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse `re` or `re+imi` (a trailing j is accepted as well)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty complex number")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError as e:
        raise ConfigError(f"malformed complex number {text!r}") from e


def _parse_term(text: str) -> Potential:
    kind, sep, body = text.strip().partition(":")
    if not sep:
        raise ConfigError(f"potential term {text!r} lacks a 'kind:' prefix")
    kind = kind.lower()
    if kind == "const":
        # const:re[,im]
        fields = [f for f in body.split(",") if f.strip()]
        if len(fields) == 1:
            return constant(parse_complex(fields[0]))
        if len(fields) == 2:
            return constant(complex(float(parse_complex(fields[0]).real), float(parse_complex(fields[1]).real)))
        raise ConfigError(f"const expects re[,im], got {body!r}")
    if kind == "poly":
        fields = [f for f in body.split(",") if f.strip()]
        return polynomial(*(parse_complex(f) for f in fields))
    if kind == "trig":
        fields = [f for f in body.split(",") if f.strip()]
        if len(fields) != 2:
            raise ConfigError(f"trig expects a,k, got {body!r}")
        k = parse_complex(fields[1])
        if k.imag:
            raise ConfigError("trig frequency k must be real")
        return trigonometric(parse_complex(fields[0]), k.real)
    if kind == "file":
        return load_tabulated(Path(body.strip()))
    raise ConfigError(f"unknown potential kind {kind!r}")


def parse_potential(text: str) -> Potential:
    """
    Parse the potential grammar.

    Terms are `const:re[,im]`, `poly:c0,c1,...`, `trig:a,k` (a*cos(k*pi*x))
    and `file:path`; several terms joined by `;` are summed.
    """
    terms = [t for t in text.split(";") if t.strip()]
    if not terms:
        raise ConfigError("empty potential specification")
    return combine(*(_parse_term(t) for t in terms))


def load_tabulated(path: Path) -> Potential:
    """Read CSV rows x,re,im with x ascending over [0, 1]."""
    if not path.exists():
        raise ConfigError(f"potential file {path} does not exist")
    try:
        data = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as e:
        raise ConfigError(f"cannot parse potential file {path}: {e}") from e
    if data.shape[1] != 3:
        raise ConfigError(f"potential file {path} must have 3 columns x,re,im")
    logger.debug("loaded %d potential samples from %s", len(data), path)
    return tabulated(data[:, 0], data[:, 1] + 1j * data[:, 2])
