"""Configuration loader for numerical settings and command-line runs."""
import json
import logging
import os
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.core.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "NONLOCAL_SPECTRA_CONFIG"


class OutputFormat(str, Enum):
    """Table output format."""
    CSV = "csv"
    JSON = "json"


class NumericsConfig(BaseModel):
    """Discretization and solver tolerances."""
    grid_resolution: int = Field(default=4096, ge=16, description="Minimum number of grid intervals")
    cauchy_tol: float = Field(default=1e-14, gt=0.0, description="Neumann series truncation, relative to the first term")
    max_terms: int = Field(default=64, gt=0, description="Neumann series term cap")
    root_tol: float = Field(default=1e-10, gt=0.0, description="Accepted |char_fn(z)| relative to max(1, |z|)")
    newton_max_steps: int = Field(default=50, gt=0)
    newton_step_tol: float = Field(default=1e-13, gt=0.0, description="Relative Newton step size that ends iteration")
    boundary_samples: int = Field(default=256, ge=256, description="Samples on a root box contour")
    min_box_half_height: float = Field(default=0.1, gt=0.0)
    jet_order_cap: int = Field(default=12, ge=1, le=12)
    galerkin_K: int = Field(default=128, ge=8, description="Cosine basis size")
    refinement_tol: float = Field(default=1e-4, gt=0.0, description="Allowed K -> 2K eigenvalue change")
    series_N: int = Field(default=4, ge=1, le=8)
    rho_floor: float = Field(default=1e-13, gt=0.0, description="Coefficients below this are ignored by the growth fit")
    error_floor: float = Field(default=1e-11, gt=0.0, description="Gaps are clamped to this before log fits")


class OutputConfig(BaseModel):
    """Output settings."""
    format: OutputFormat = Field(default=OutputFormat.CSV)
    jobs: int | None = Field(default=None, ge=1, description="Worker processes; None uses all cores")


class Config(BaseModel):
    """Application configuration."""
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


class RunConfig(BaseModel):
    """One validated command-line run."""
    v_spec: str = Field(default="const:0", description="Potential V in the potential grammar")
    q_spec: str = Field(default="const:0", description="Potential Q in the potential grammar")
    alphas: list[float] = Field(default_factory=lambda: [0.0])
    betas: list[float] = Field(default_factory=lambda: [0.0])
    n_lo: int = Field(default=1)
    n_hi: int = Field(default=10)
    methods: list[str] = Field(default_factory=lambda: ["shooting"])
    series_N: int = Field(default=4)
    grid: int = Field(default=4096)
    K: int = Field(default=128)
    format: OutputFormat = Field(default=OutputFormat.CSV)
    out: Path | None = None
    jobs: int | None = None

    @field_validator("alphas")
    @classmethod
    def _alpha_range(cls, values: list[float]) -> list[float]:
        if not values or any(not 0.0 <= a <= 1.0 for a in values):
            raise ValueError("alpha out of [0,1]")
        return values

    @field_validator("betas")
    @classmethod
    def _beta_range(cls, values: list[float]) -> list[float]:
        if not values or any(not 0.0 <= b <= 1.0 for b in values):
            raise ValueError("beta out of [0,1]")
        return values

    @field_validator("n_lo")
    @classmethod
    def _n_lo_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("n_lo must be >= 1")
        return value

    @field_validator("series_N")
    @classmethod
    def _series_range(cls, value: int) -> int:
        if not 1 <= value <= 8:
            raise ValueError("series_N out of [1,8]")
        return value

    @field_validator("grid")
    @classmethod
    def _grid_minimum(cls, value: int) -> int:
        if value < 16:
            raise ValueError("grid resolution must be >= 16")
        return value

    @field_validator("K")
    @classmethod
    def _k_minimum(cls, value: int) -> int:
        if value < 8:
            raise ValueError("K must be >= 8")
        return value

    @field_validator("jobs")
    @classmethod
    def _jobs_positive(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("jobs must be >= 1")
        return value

    @field_validator("methods")
    @classmethod
    def _methods_known(cls, values: list[str]) -> list[str]:
        # Local import keeps config importable without the solver stack.
        from src.spectrum.models import Method

        known = {m.value for m in Method}
        if not values:
            raise ValueError("at least one method is required")
        for value in values:
            if value not in known:
                raise ValueError(f"unknown method {value!r}; valid methods: {sorted(known)}")
        return values

    @model_validator(mode="after")
    def _n_range(self) -> "RunConfig":
        if self.n_hi < self.n_lo:
            raise ValueError("n range is empty (hi < lo)")
        return self


def build_run_config(**fields) -> RunConfig:
    """Validate run fields, translating pydantic failures into ConfigError."""
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        messages = []
        for err in e.errors():
            msg = str(err.get("msg", ""))
            messages.append(msg.removeprefix("Value error, "))
        raise ConfigError("; ".join(messages)) from e


def load_config(config_path: str | Path | None = None) -> Config:
    """
    Load configuration from config.json.

    Args:
        config_path: Path to a JSON config file. If None, the path in
                     NONLOCAL_SPECTRA_CONFIG is used, else config.json in the
                     project root.

    Returns:
        Config object with loaded or default values.
    """
    if config_path is None:
        env_path = os.getenv(CONFIG_ENV_VAR)
        if env_path:
            config_path = Path(env_path)
        else:
            # src/core/config.py -> src/core -> src -> project root
            project_root = Path(__file__).parent.parent.parent
            config_path = project_root / "config.json"
    else:
        config_path = Path(config_path)

    if not config_path.exists():
        logger.warning("config file not found at %s, using default configuration", config_path)
        return Config()

    try:
        with open(config_path, "r") as f:
            config_data = json.load(f)
        return Config(**config_data)
    except json.JSONDecodeError as e:
        logger.warning("invalid JSON in %s: %s, using default configuration", config_path, e)
        return Config()
    except ValidationError as e:
        logger.warning("invalid settings in %s: %s, using default configuration", config_path, e)
        return Config()


# Global config instance (lazy-loaded)
_config: Config | None = None


def get_config() -> Config:
    """Get the global configuration instance (singleton)."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config: Config | None) -> None:
    """Replace the global configuration; None forces a reload on next access."""
    global _config
    _config = config
