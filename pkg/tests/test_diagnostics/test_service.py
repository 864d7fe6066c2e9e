import math

import pytest

from src.core.config import build_run_config
from src.core.errors import BelowFloorError, ConfigError
from src.diagnostics.models import ComparisonRow
from src.diagnostics.service import (
    SpectrumService,
    bari_closeness,
    compare,
    enclosure_violations,
    reference_method,
    slope_fit,
    summarize,
)
from src.spectrum.models import EigenvalueRecord, Method

ALL_METHODS = list(Method)


@pytest.mark.parametrize("power", [1, 3])
def test_slope_of_power_law(power):
    pairs = [(n, 2.0 * n**-power) for n in range(10, 51, 5)]
    assert slope_fit(pairs) == pytest.approx(-power, abs=1e-6)


def test_slope_needs_samples_above_zero():
    with pytest.raises(BelowFloorError):
        slope_fit([(n, 1.0 / n) for n in range(1, 5)])
    with pytest.raises(BelowFloorError):
        slope_fit([(n, 0.0) for n in range(1, 10)] + [(10, math.nan)])


def test_slope_clamps_to_floor():
    assert slope_fit([(n, 1e-20) for n in range(1, 8)]) == pytest.approx(0.0, abs=1e-12)


def test_unperturbed_methods_agree(make_ctx):
    rows = compare(make_ctx(resolution=64), 1, 4, ALL_METHODS)
    assert [row.n for row in rows] == [1, 2, 3, 4]
    for row in rows:
        re, im = row.values["shooting"]
        assert re == pytest.approx((math.pi * row.n) ** 2)
        assert im == 0.0
        assert len(row.gaps) == math.comb(len(ALL_METHODS), 2)
        assert max(row.gaps.values()) <= 1e-9
    summary = summarize(rows, ALL_METHODS)
    assert {s.method for s in summary} == {m.value for m in ALL_METHODS} - {"shooting"}
    assert all(s.reference == "shooting" and s.slope is None for s in summary)


def test_compare_needs_methods(make_ctx):
    with pytest.raises(ConfigError):
        compare(make_ctx(), 1, 2, [])


def test_flat_row_columns():
    row = ComparisonRow(n=2, values={"shooting": (1.0, 0.0), "asymptotic2": (1.5, 0.0)},
                        gaps={"shooting_asymptotic2": 0.5})
    flat = row.flat()
    assert list(flat) == [
        "n", "shooting_re", "shooting_im", "asymptotic2_re", "asymptotic2_im",
        "gap_shooting_asymptotic2", "ngap_shooting_asymptotic2", "n3gap_shooting_asymptotic2",
    ]
    assert flat["n3gap_shooting_asymptotic2"] == 4.0
    assert row.gap("shooting", "asymptotic2") == 0.5


def test_reference_method():
    assert reference_method([Method.SERIES, Method.SHOOTING]) == Method.SHOOTING
    assert reference_method([Method.SERIES, Method.GALERKIN]) == Method.SERIES


def test_enclosure_violations():
    inside = EigenvalueRecord(n=1, lam=3 + 0.5j, method=Method.SHOOTING)
    above = EigenvalueRecord(n=2, lam=3 + 5j, method=Method.SHOOTING)
    left = EigenvalueRecord(n=3, lam=-4 + 0j, method=Method.GALERKIN)
    assert enclosure_violations([inside, above, left], 1.0) == [above, left]


def test_closeness_without_perturbation(make_ctx):
    rows = bari_closeness(make_ctx(resolution=256), 1, 4)
    assert [r.n for r in rows] == [1, 2, 3, 4]
    assert all(r.distance == pytest.approx(0, abs=1e-10) for r in rows)


def test_closeness_partial_sums(smooth_ctx):
    rows = bari_closeness(smooth_ctx, 6, 9)
    assert [r.n for r in rows] == [6, 7, 8, 9]
    total = 0.0
    for r in rows:
        assert 0 < r.distance < 0.5
        total += r.distance**2
        assert r.partial_sum == pytest.approx(total)


def _service(**fields):
    defaults = {"grid": 64, "jobs": 1, "n_lo": 1, "n_hi": 2}
    return SpectrumService(build_run_config(**(defaults | fields)))


def test_eigs_rows_are_ordered_by_n_then_method():
    rows = _service(methods=["shooting", "asymptotic2", "shooting"]).eigs()
    assert [(r["n"], r["method"]) for r in rows] == [
        (1, "shooting"), (1, "asymptotic2"), (2, "shooting"), (2, "asymptotic2"),
    ]
    assert rows[0]["remainder"] is None


def test_sweep_is_alpha_major():
    rows = _service(v_spec="const:1", alphas=[0.0, 0.5], methods=["asymptotic2"], n_lo=2).sweep()
    assert [(r.alpha, r.beta, r.n) for r in rows] == [(0.0, 0.0, 2), (0.5, 0.0, 2)]
    assert rows[0].re == pytest.approx(4 * math.pi**2 + 1)
    assert rows[1].re == pytest.approx(4 * math.pi**2 - 0.5)


def test_range_rules():
    with pytest.raises(ConfigError, match="sweep needs"):
        _service().sweep()
    with pytest.raises(ConfigError, match="single values"):
        _service(alphas=[0.0, 0.5]).eigs()


def test_curve_and_markers():
    service = _service()
    assert service.curve(10.0, 3) == [
        {"t": 0.0, "re": 0.0, "im": 0.0},
        {"t": 5.0, "re": 25.0, "im": 0.0},
        {"t": 10.0, "re": 100.0, "im": 0.0},
    ]
    with pytest.raises(ConfigError):
        service.curve(-1.0, 3)
    markers = service.markers()
    assert [m["n"] for m in markers] == [1, 2]
    assert markers[1]["t"] == pytest.approx(2 * math.pi)
    assert markers[1]["re"] == pytest.approx(4 * math.pi**2)


@pytest.mark.parametrize("v,q", [("const:1", "const:1"), ("const:0", "const:0")])
def test_switched_off_operator_gives_classical_spectrum(make_ctx, v, q):
    rows = compare(make_ctx(v, q, 1.0, 1.0, 256), 1, 20, ALL_METHODS, K=128)
    assert [r.n for r in rows] == list(range(1, 21))
    for row in rows:
        exact = (math.pi * row.n) ** 2
        for re, im in row.values.values():
            assert abs(complex(re, im) - exact) <= 1e-9
        assert max(row.gaps.values()) <= 1e-9


def test_closeness_sums_settle(smooth_ctx):
    rows = {r.n: r for r in bari_closeness(smooth_ctx, 1, 60)}
    assert max(rows) == 60
    assert rows[60].partial_sum / rows[30].partial_sum - 1 < 0.1
