import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.errors import ConfigError
from src.problem.grid import GridFunction
from src.problem.nonlocal_op import (
    apply_B,
    apply_L,
    apply_M,
    apply_M_jet,
    as_jet,
    build_context,
    contraction_ratio,
    effective_bound,
)
from src.problem.potential import constant


def test_zero_potentials_are_trivial(make_ctx):
    ctx = make_ctx()
    assert ctx.is_trivial
    u = GridFunction(ctx.grid, np.cos(3 * ctx.grid.nodes))
    assert np.all(apply_M(ctx, 3.0, u).values == 0)
    assert np.all(apply_L(ctx, 3.0, u).values == 0)


def test_full_translation_switches_operator_off(make_ctx):
    ctx = make_ctx("const:1", "const:1", 1.0, 1.0)
    assert ctx.is_trivial
    assert effective_bound(ctx) == 0.0
    assert ctx.full_bound == pytest.approx(2.0)


def test_bounds_use_translated_supports(make_ctx):
    ctx = make_ctx("trig:1,1", "const:2", 0.5, 0.5)
    assert ctx.effective_bound == pytest.approx(3.0)
    assert ctx.full_bound == pytest.approx(3.0)
    ctx = make_ctx("poly:0,1", "const:0", 0.5, 0.0)
    assert ctx.effective_bound == pytest.approx(0.5)
    assert ctx.full_bound == pytest.approx(1.0)


def test_contraction_ratio(make_ctx):
    ctx = make_ctx("const:1")
    assert contraction_ratio(ctx, 10.0 + 0j) == pytest.approx(0.1)
    assert contraction_ratio(ctx, 10.0 + 1j) == pytest.approx(np.exp(1) / abs(10 + 1j))


def test_apply_B_shifts_exactly(make_ctx):
    ctx = make_ctx("const:1", "const:0", 0.25, 0.0, 64)
    x = ctx.grid.nodes
    out = apply_B(ctx, GridFunction(ctx.grid, x)).values
    end = ctx.grid.v_end
    assert_allclose(out[: end + 1], x[: end + 1] + 0.25, atol=1e-15)
    assert np.all(out[end + 1:] == 0)


def test_apply_B_interpolates_on_segmented_grid(make_ctx):
    alpha = np.sqrt(2) - 1
    ctx = make_ctx("const:0", "const:2", 0.0, alpha, 256)
    x = ctx.grid.nodes
    out = apply_B(ctx, GridFunction(ctx.grid, x)).values
    start = ctx.grid.q_start
    assert_allclose(out[start:], 2 * (x[start:] - alpha), atol=1e-12)
    assert np.all(out[:start] == 0)


def test_M_and_L_closed_forms(make_ctx):
    ctx = make_ctx("const:1", resolution=4096)
    z = 5.0
    x = ctx.grid.nodes
    u = GridFunction(ctx.grid, np.cos(z * x))
    assert_allclose(apply_M(ctx, z, u).values, x * np.sin(z * x) / 2, atol=1e-6)
    assert_allclose(apply_L(ctx, z, u).values, (x * np.cos(z * x) + np.sin(z * x) / z) / 2, atol=1e-6)


def test_jet_of_order_zero_matches_plain(smooth_ctx):
    x = smooth_ctx.grid.nodes
    u = GridFunction(smooth_ctx.grid, np.exp(1j * x))
    plain = apply_M(smooth_ctx, 7.0, u).values
    jet = apply_M_jet(smooth_ctx, 7.0, 0, as_jet(u, 0)).values
    assert_allclose(jet[:, 0], plain, atol=1e-14)


def test_jet_derivative_matches_difference_quotient(make_ctx):
    ctx = make_ctx("const:1;trig:0.5,1", "const:0.3", 0.2, 0.4, 2048)
    x = ctx.grid.nodes
    u = GridFunction(ctx.grid, np.cos(x))
    z, h = 6.0, 1e-5
    jet = apply_M_jet(ctx, z, 1, as_jet(u, 1)).values
    diff = (apply_M(ctx, z + h, u).values - apply_M(ctx, z - h, u).values) / (2 * h)
    assert_allclose(jet[:, 1], diff, atol=1e-7)


def test_operator_errors(make_ctx):
    ctx = make_ctx("const:1", resolution=64)
    other = make_ctx("const:1", resolution=128)
    u = GridFunction(ctx.grid, np.ones(len(ctx.grid)))
    with pytest.raises(ConfigError, match="plain operator"):
        apply_M(ctx, 3.0, as_jet(u, 2))
    with pytest.raises(ConfigError, match="jet order mismatch"):
        apply_M_jet(ctx, 3.0, 1, as_jet(u, 2))
    with pytest.raises(ConfigError, match="grid mismatch"):
        apply_M(other, 3.0, u)


def test_context_rejects_foreign_grid(make_ctx):
    ctx = make_ctx("const:1", alpha=0.5, resolution=64)
    with pytest.raises(ConfigError):
        type(ctx)(constant(1), constant(0), 0.25, 0.0, ctx.grid)


def test_build_context_uses_configured_resolution():
    ctx = build_context(constant(1), constant(0), 0.0, 0.0)
    assert len(ctx.grid) == 4097


@pytest.mark.parametrize("apply", [apply_M, apply_L])
def test_integral_operators_are_linear(smooth_ctx, apply):
    x = smooth_ctx.grid.nodes
    u = GridFunction(smooth_ctx.grid, np.cos(3 * x))
    w = GridFunction(smooth_ctx.grid, x**2 + 1j * x)
    a, b = 2.0 - 1.0j, -0.5j
    z = 9.0 + 0.4j
    combined = apply(smooth_ctx, z, GridFunction(smooth_ctx.grid, a * u.values + b * w.values)).values
    separate = a * apply(smooth_ctx, z, u).values + b * apply(smooth_ctx, z, w).values
    assert_allclose(combined, separate, rtol=0, atol=1e-12)


def test_translated_term_is_linear(smooth_ctx):
    x = smooth_ctx.grid.nodes
    u, w = np.exp(x), np.sin(5 * x)
    combined = apply_B(smooth_ctx, GridFunction(smooth_ctx.grid, 3 * u - 2j * w)).values
    separate = 3 * apply_B(smooth_ctx, GridFunction(smooth_ctx.grid, u)).values
    separate -= 2j * apply_B(smooth_ctx, GridFunction(smooth_ctx.grid, w)).values
    assert_allclose(combined, separate, rtol=0, atol=1e-13)


@pytest.mark.parametrize("z", [6.0, 8.0 + 0.5j, 12.0 - 1.0j])
def test_sup_norm_bounds(smooth_ctx, z):
    x = smooth_ctx.grid.nodes
    u = GridFunction(smooth_ctx.grid, np.cos(7 * x) + 0.5j * np.sin(2 * x))
    u_norm = float(np.max(np.abs(u.values)))
    bound = effective_bound(smooth_ctx)
    slack = 1 + 1e-12
    assert np.max(np.abs(apply_B(smooth_ctx, u).values)) <= slack * bound * u_norm
    scale = bound * math.exp(abs(z.imag)) * u_norm
    assert np.max(np.abs(apply_M(smooth_ctx, z, u).values)) <= slack * scale
    assert np.max(np.abs(apply_L(smooth_ctx, z, u).values)) <= slack * scale


def test_translated_term_support(make_ctx):
    ctx = make_ctx("trig:1,1", "const:0", 0.3, 0.0, 1024)
    out = apply_B(ctx, GridFunction(ctx.grid, np.ones(len(ctx.grid)))).values
    assert np.all(out[ctx.grid.v_end + 1:] == 0)
    assert np.any(out[: ctx.grid.v_end] != 0)
    ctx = make_ctx("const:0", "trig:1,1", 0.0, 0.4, 1024)
    out = apply_B(ctx, GridFunction(ctx.grid, np.ones(len(ctx.grid)))).values
    assert np.all(out[: ctx.grid.q_start] == 0)
    assert np.any(out[ctx.grid.q_start + 1:] != 0)


def test_derivative_of_M_is_z_times_L(make_ctx):
    ctx = make_ctx("trig:0.5,1", "const:0.3+0.2i", 0.0, 0.0, 4096)
    x = ctx.grid.nodes
    u = GridFunction(ctx.grid, np.cos(3 * x) + 1j * x)
    z = 5.0 + 0.2j
    slope = np.gradient(apply_M(ctx, z, u).values, x, edge_order=2)
    assert_allclose(slope, z * apply_L(ctx, z, u).values, rtol=0, atol=1e-5)
