"""Eigenvalue records and method tags."""
from dataclasses import dataclass
from enum import Enum


class Method(str, Enum):
    """Eigenvalue method enumeration."""
    SHOOTING = "shooting"
    SERIES = "series"
    EXPANSION = "expansion"
    ASYMPTOTIC2 = "asymptotic2"
    ASYMPTOTIC4 = "asymptotic4"
    GALERKIN = "galerkin"


ROOT_METHODS = frozenset({Method.SHOOTING, Method.SERIES, Method.EXPANSION})


@dataclass(frozen=True)
class EigenvalueRecord:
    """One eigenvalue with its provenance."""
    n: int
    lam: complex
    method: Method
    residual: float = 0.0
    z: complex | None = None
    remainder: float | None = None
    """A-posteriori remainder estimate (series only)."""

    def within_enclosure(self, bound: float, slack: float = 1e-9) -> bool:
        """|Im lam| <= bound and Re lam >= -bound."""
        tol = slack * max(1.0, abs(self.lam))
        return abs(self.lam.imag) <= bound + tol and self.lam.real >= -bound - tol

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "method": self.method.value,
            "re": float(self.lam.real),
            "im": float(self.lam.imag),
            "residual": float(self.residual),
            "remainder": None if self.remainder is None else float(self.remainder),
        }
