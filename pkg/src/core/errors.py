"""Error hierarchy shared by the library and the command line."""


class SpectralError(Exception):
    """Base class for every failure raised by the toolkit."""

    exit_code: int = 1


class ConfigError(SpectralError, ValueError):
    """Invalid input: flags, potential grammar, parameter ranges."""

    exit_code = 2


class NumericalFailure(SpectralError, RuntimeError):
    """A computation ran but could not meet its contract."""

    exit_code = 3

    def __init__(self, message: str, n: int | None = None, method: str | None = None):
        self.n = n
        self.method = method
        prefix = []
        if n is not None:
            prefix.append(f"n={n}")
        if method is not None:
            prefix.append(f"method={method}")
        if prefix:
            message = f"[{', '.join(prefix)}] {message}"
        super().__init__(message)


class ConvergenceError(NumericalFailure):
    """Neumann series or Newton iteration did not converge."""

    def __init__(self, message: str, ratio: float | None = None, **kwargs):
        self.ratio = ratio
        if ratio is not None:
            message = f"{message} (observed ratio {ratio:.3g})"
        super().__init__(message, **kwargs)


class AdmissibilityError(NumericalFailure):
    """The contraction condition fails for the requested z or box."""


class RootEscapeError(NumericalFailure):
    """A Newton iterate left its root box."""


class BoundaryRootError(NumericalFailure):
    """The characteristic function nearly vanishes on a box boundary."""


class NotARootError(NumericalFailure):
    """The supplied point is not a root of the characteristic function."""


class SeriesDivergenceError(NumericalFailure):
    """Fitted coefficient growth makes the eigenvalue series unreliable."""


class RefinementError(NumericalFailure):
    """Galerkin eigenvalues moved too much between K and 2K."""


class EigenSolverError(NumericalFailure):
    """The dense eigenvalue routine failed."""


class BelowFloorError(NumericalFailure):
    """Too few usable error samples remain for a slope fit."""
