"""Core utilities and types."""
from src.core.config import Config, NumericsConfig, RunConfig, build_run_config, get_config
from src.core.errors import ConfigError, NumericalFailure, SpectralError
from src.core.parallel import ordered_map

__all__ = [
    "Config",
    "NumericsConfig",
    "RunConfig",
    "build_run_config",
    "get_config",
    "ConfigError",
    "NumericalFailure",
    "SpectralError",
    "ordered_map",
]
