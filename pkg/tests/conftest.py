import pytest

from src.core.config import Config, set_config
from src.problem.nonlocal_op import build_context
from src.problem.potential import parse_potential

SMOOTH_V = "const:0.5+0.25i;trig:0.5,1"
SMOOTH_Q = "trig:0.3,2"


@pytest.fixture(autouse=True)
def default_config():
    """Every test sees the built-in defaults, never a config.json on disk."""
    set_config(Config())
    yield
    set_config(None)


@pytest.fixture
def make_ctx():
    def _make(v="const:0", q="const:0", alpha=0.0, beta=0.0, resolution=1024):
        return build_context(parse_potential(v), parse_potential(q), alpha, beta, resolution)

    return _make


@pytest.fixture
def smooth_ctx(make_ctx):
    """Complex smooth potentials with alpha=0.3, beta=0.7."""
    return make_ctx(SMOOTH_V, SMOOTH_Q, 0.3, 0.7, 4096)
