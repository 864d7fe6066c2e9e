import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.errors import ConfigError
from src.problem.potential import (
    PotentialKind,
    constant,
    evaluate,
    load_tabulated,
    parse_complex,
    parse_potential,
    sup_norm,
    trigonometric,
)


def test_parse_complex_forms():
    assert parse_complex("2") == 2
    assert parse_complex("0.5+0.25i") == 0.5 + 0.25j
    assert parse_complex("-1j") == -1j
    with pytest.raises(ConfigError):
        parse_complex("abc")


def test_constant():
    p = parse_potential("const:2")
    assert p.kind == PotentialKind.CONSTANT
    assert evaluate(p, 0.3) == 2
    assert evaluate(p, 0.3, 1) == 0


def test_constant_with_imaginary_field():
    assert evaluate(parse_potential("const:1,2"), 0.5) == 1 + 2j


def test_polynomial_and_derivatives():
    p = parse_potential("poly:1,2,3")
    assert evaluate(p, 0.5) == pytest.approx(2.75)
    assert evaluate(p, 0.5, 1) == pytest.approx(5.0)
    assert evaluate(p, 0.5, 2) == pytest.approx(6.0)
    assert evaluate(p, 0.5, 3) == pytest.approx(0.0)


def test_trigonometric_derivative():
    p = trigonometric(1.0, 1.0)
    assert evaluate(p, 0.5, 1) == pytest.approx(-math.pi)
    assert evaluate(p, 0.0, 2) == pytest.approx(-math.pi**2)


def test_sum_of_terms():
    p = parse_potential("const:0.5+0.25i;trig:0.5,1")
    assert p.kind == PotentialKind.SUM
    assert evaluate(p, 0.0) == pytest.approx(1.0 + 0.25j)
    assert evaluate(p, 1.0) == pytest.approx(0.0 + 0.25j)
    assert p.derivative_order_available == 8


def test_array_input_keeps_shape():
    x = np.linspace(0, 1, 5)
    assert_allclose(evaluate(parse_potential("poly:0,1"), x), x)


def test_out_of_range_x():
    with pytest.raises(ConfigError, match=r"x outside \[0,1\]"):
        evaluate(constant(1), 1.5)


@pytest.mark.parametrize("text", ["", "foo:1", "trig:1", "const", "trig:1,2i", "const:1,2,3"])
def test_malformed_grammar(text):
    with pytest.raises(ConfigError):
        parse_potential(text)


def test_tabulated_file(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("0,1,0\n0.5,2,1\n1,3,0\n")
    p = parse_potential(f"file:{path}")
    assert p.kind == PotentialKind.TABULATED
    assert evaluate(p, 0.25) == pytest.approx(1.5 + 0.5j)
    assert p.derivative_order_available == 0
    with pytest.raises(ConfigError, match="derivative order 1 unavailable"):
        evaluate(p, 0.25, 1)


def test_tabulated_must_cover_interval(tmp_path):
    path = tmp_path / "v.csv"
    path.write_text("0.1,1,0\n1,3,0\n")
    with pytest.raises(ConfigError):
        load_tabulated(path)


def test_missing_file():
    with pytest.raises(ConfigError, match="does not exist"):
        parse_potential("file:/nonexistent/potential.csv")


def test_sup_norm():
    assert sup_norm(constant(1 + 1j)) == pytest.approx(math.sqrt(2))
    assert sup_norm(trigonometric(2.0, 1.0)) == pytest.approx(2.0)
    assert sup_norm(trigonometric(1.0, 1.0), 0.25, 0.75) == pytest.approx(math.cos(math.pi / 4))
    assert sup_norm(constant(3), 0.5, 0.5) == 0.0


def test_is_zero():
    assert parse_potential("const:0").is_zero
    assert parse_potential("const:0;trig:0,3").is_zero
    assert not parse_potential("poly:0,1").is_zero


def test_scalar_evaluation_of_trigonometric_term():
    p = trigonometric(1.0, 2)
    assert evaluate(p, 0.5) == pytest.approx(-1.0)
    assert evaluate(p, 0.5, 1) == pytest.approx(0.0, abs=1e-12)
    assert evaluate(p, 0.25, 2) == pytest.approx(0.0, abs=1e-12)
    assert evaluate(parse_potential("const:0.5;trig:0.3,2"), 0.0) == pytest.approx(0.8)
