import math

import pytest

from src.core.errors import AdmissibilityError
from src.spectrum.galerkin import galerkin_eigenvalues
from src.spectrum.models import Method
from src.spectrum.roots import (
    RootBox,
    census,
    count_roots,
    find_n_check,
    find_root,
    is_admissible,
    make_box,
    shooting_eigenvalues,
)


def test_make_box():
    box = make_box(3, 1.0)
    assert box.re_lo == pytest.approx(2.5 * math.pi)
    assert box.re_hi == pytest.approx(3.5 * math.pi)
    assert box.im_half_height == pytest.approx(math.sqrt(2))
    assert make_box(3, 0.0).im_half_height == pytest.approx(0.1)


def test_box_contour_is_closed():
    points = RootBox(1, 2.0, 4.0, 0.5).contour(256)
    assert points[0] == points[-1]
    assert len(points) >= 256


def test_unperturbed_roots_are_exact(make_ctx):
    ctx = make_ctx("const:1", "const:1", 1.0, 1.0, 64)
    for n in range(1, 6):
        record = find_root(ctx, make_box(n, ctx.full_bound))
        assert record.lam == pytest.approx((math.pi * n) ** 2, rel=1e-15)
        assert record.method == Method.SHOOTING


def test_classical_constant_shift(make_ctx):
    ctx = make_ctx("const:1", resolution=4096)
    record = find_root(ctx, make_box(5, ctx.full_bound))
    assert record.lam == pytest.approx((5 * math.pi) ** 2 + 1, abs=1e-4)
    assert record.residual <= 1e-10 * abs(record.z)


def test_inadmissible_box(make_ctx):
    ctx = make_ctx("const:3", resolution=256)
    box = make_box(1, ctx.full_bound)
    assert not is_admissible(ctx, box)
    with pytest.raises(AdmissibilityError):
        find_root(ctx, box)


def test_one_root_per_box(smooth_ctx):
    assert count_roots(smooth_ctx, make_box(6, smooth_ctx.full_bound)) == 1


def test_every_box_holds_one_root_up_to_sixty(make_ctx):
    ctx = make_ctx("const:0.5+0.25i;trig:0.5,1", "trig:0.3,2", 0.3, 0.7, 1024)
    n_check = find_n_check(ctx, 12)
    assert n_check is not None
    assert census(ctx, n_check, 60) == [(n, 1) for n in range(n_check, 61)]


def test_census_without_perturbation(make_ctx):
    ctx = make_ctx()
    assert census(ctx, 1, 3) == [(1, 1), (2, 1), (3, 1)]


def test_uniform_regime_start(smooth_ctx, make_ctx):
    assert find_n_check(make_ctx(), 5) == 1
    n_check = find_n_check(smooth_ctx, 12)
    assert n_check is not None and 4 <= n_check <= 6


def test_shooting_falls_back_to_galerkin(smooth_ctx):
    records = shooting_eigenvalues(smooth_ctx, 1, 8, K=64)
    assert [r.n for r in records] == list(range(1, 9))
    n_check = find_n_check(smooth_ctx, 8)
    for r in records:
        expected = Method.SHOOTING if r.n >= n_check else Method.GALERKIN
        assert r.method == expected
        assert r.within_enclosure(smooth_ctx.full_bound)


def test_shooting_agrees_with_galerkin(smooth_ctx):
    galerkin = {r.n: r.lam for r in galerkin_eigenvalues(smooth_ctx, 256, 15)}
    records = [r for r in shooting_eigenvalues(smooth_ctx, 5, 15) if r.method == Method.SHOOTING]
    assert [r.n for r in records][-10:] == list(range(6, 16))
    for r in records:
        assert abs(r.lam - galerkin[r.n]) <= 1e-6


def test_eigenvalues_depend_continuously_on_alpha(make_ctx):
    v, q = "const:0.5+0.25i;trig:0.5,1", "trig:0.3,2"
    n = 8
    ctx = make_ctx(v, q, 0.3, 0.7, 2048)
    base = find_root(ctx, make_box(n, ctx.full_bound)).lam
    changes = []
    for delta in (1e-2, 1e-3):
        ctx = make_ctx(v, q, 0.3 + delta, 0.7, 2048)
        changes.append(abs(find_root(ctx, make_box(n, ctx.full_bound)).lam - base))
    assert changes[0] < 5.0
    assert changes[1] < 0.5 * changes[0]
