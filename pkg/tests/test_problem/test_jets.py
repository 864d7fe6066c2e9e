import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.config import Config, NumericsConfig, set_config
from src.core.errors import ConfigError
from src.problem import jets
from src.problem.jets import TaylorJet


def test_jet_mul_truncates():
    a = np.array([1.0, 1.0, 0.0], dtype=complex)
    assert_allclose(jets.jet_mul(a, a), [1, 2, 1])
    b = np.array([1.0, 1.0], dtype=complex)
    assert_allclose(jets.jet_mul(b, b), [1, 2])


def test_jet_mul_broadcasts_over_grid():
    grid_values = np.ones((4, 3), dtype=complex)
    assert jets.jet_mul(grid_values, jets.variable(2.0, 2)).shape == (4, 3)


def test_reciprocal_of_variable():
    assert_allclose(jets.reciprocal(jets.variable(2.0, 3)), [1 / 2, -1 / 4, 1 / 8, -1 / 16])


def test_trig_coefficients():
    cos_j, sin_j = jets.trig(1.0, 2.0, 3)
    c, s = math.cos(2.0), math.sin(2.0)
    assert_allclose(cos_j, [c, -2 * s, -2 * c, 8 * s / 6])
    assert_allclose(sin_j, [s, 2 * c, -2 * s, -8 * c / 6])


def test_trig_jet_evaluates_nearby():
    center = 3 * math.pi
    cos_j, _ = jets.trig(center, 0.5, 12)
    jet = TaylorJet(center, cos_j)
    assert jet(center + 0.1) == pytest.approx(math.cos((center + 0.1) * 0.5), abs=1e-14)


def test_taylor_jet_arithmetic():
    x = TaylorJet(2.0, jets.variable(2.0, 2))
    square = x * x
    assert_allclose(square.coeffs, [4, 4, 1])
    assert square.derivative(2) == pytest.approx(2.0)
    assert (square - x).value == pytest.approx(2.0)
    assert_allclose((-x).coeffs, [-2, -1, 0])
    assert_allclose((3 * x).coeffs, [6, 3, 0])
    assert square.truncate(1).order == 1


def test_jet_errors():
    with pytest.raises(ConfigError):
        jets.check_order(13)
    jets.check_order(12)
    x = TaylorJet(0.0, [1.0, 2.0])
    with pytest.raises(ConfigError):
        x.coefficient(2)
    with pytest.raises(ConfigError):
        x + TaylorJet(1.0, [1.0, 2.0])


def test_order_cap_follows_config():
    set_config(Config(numerics=NumericsConfig(jet_order_cap=4)))
    jets.check_order(4)
    with pytest.raises(ConfigError, match=r"\[0, 4\]"):
        jets.check_order(5)
