import math

import pytest
from hypothesis import given, strategies as st

from dnncost import (
    MachineSpec,
    MeasurementRecord,
    ModelMetrics,
    StatsError,
    correlation_suite,
    footprint_to_modelsize_ratio,
    ppmcc,
    roofline_classify,
)
from dnncost.costs import Convention, ModelCost


class TestPpmcc:
    def test_perfect_positive(self):
        assert ppmcc([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0)

    def test_perfect_negative(self):
        assert ppmcc([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_known_value(self):
        xs = [1, 2, 3, 4, 5]
        ys = [2, 1, 4, 3, 5]
        # hand-checked: cov = 2, sx = sy = sqrt(10)
        assert ppmcc(xs, ys) == pytest.approx(0.8)

    def test_symmetry(self):
        xs, ys = [1.5, 2.0, 9.0, 4.0], [3.0, 1.0, 2.0, 8.0]
        assert ppmcc(xs, ys) == pytest.approx(ppmcc(ys, xs))

    def test_bounded(self):
        xs, ys = [1, 5, 2, 8, 3], [9, 1, 7, 2, 5]
        assert -1.0 <= ppmcc(xs, ys) <= 1.0

    def test_length_mismatch(self):
        with pytest.raises(StatsError, match="length"):
            ppmcc([1, 2], [1, 2, 3])

    def test_too_few_points(self):
        with pytest.raises(StatsError):
            ppmcc([1], [2])

    def test_zero_variance(self):
        with pytest.raises(StatsError, match="variance"):
            ppmcc([3, 3, 3], [1, 2, 3])

    @given(
        xs=st.lists(st.integers(-1000, 1000).map(float), min_size=3, max_size=20),
        a=st.floats(0.25, 8),
        b=st.floats(-64, 64),
    )
    def test_positive_affine_invariance(self, xs, a, b):
        ys = [i * 1.0 for i in range(len(xs))]
        try:
            base = ppmcc(xs, ys)
        except StatsError:
            return  # constant xs
        scaled = ppmcc([a * x + b for x in xs], ys)
        assert scaled == pytest.approx(base, abs=1e-6)


class TestRecords:
    def test_pct_bounds_enforced(self):
        with pytest.raises(StatsError):
            MeasurementRecord(model_id="m", gemv2t_pct=120.0)

    def test_optional_fields_default_none(self):
        r = MeasurementRecord(model_id="m")
        assert r.batch is None
        assert r.footprint_mb is None

    def test_metric_ratios(self):
        m = ModelMetrics(model_id="m", params=10.0, activations=40.0, macs=100.0)
        assert m.acts_per_param == 4.0
        assert m.macs_per_param == 10.0
        assert m.macs_per_act == 2.5


class TestMachineSpec:
    def test_ridge_point(self):
        assert MachineSpec(1e12, 1e11).ridge_point == 10.0

    def test_invalid_peaks(self):
        with pytest.raises(StatsError):
            MachineSpec(0, 1)


def test_footprint_to_modelsize_ratio_decimal_mb():
    # 60.97 M fp32 params = 243.88 decimal MB; 1015 MB / 243.88 MB = 4.16
    r = footprint_to_modelsize_ratio(1015.0, 60.97e6, 4)
    assert r == pytest.approx(4.16, abs=0.01)


def _metrics(n):
    return [
        ModelMetrics(model_id=f"m{i}", params=(i + 1) * 1e6,
                     activations=(i + 2) * 2e6, macs=(i + 1) ** 2 * 5e7)
        for i in range(n)
    ]


class TestCorrelationSuite:
    def test_joins_by_model_id(self):
        metrics = _metrics(4)
        meas = [
            MeasurementRecord(model_id=f"m{i}", footprint_mb=100.0 + 7 * i,
                              energy_eff_gmacs_per_joule=5.0 + i)
            for i in range(4)
        ]
        report = correlation_suite(metrics, meas)
        entry = report.get("params_vs_footprint")
        assert entry.pairs == 4
        assert entry.r == pytest.approx(1.0)
        assert not entry.degenerate

    def test_missing_measurements_drop_entries(self):
        metrics = _metrics(3)
        meas = [MeasurementRecord(model_id=f"m{i}", footprint_mb=50.0 * (i + 1))
                for i in range(3)]
        report = correlation_suite(metrics, meas)
        names = {e.name for e in report.entries}
        assert "params_vs_footprint" in names
        assert "energy_eff_vs_macs_per_param" not in names

    def test_two_points_marked_degenerate(self):
        metrics = _metrics(2)
        meas = [MeasurementRecord(model_id=f"m{i}", footprint_mb=10.0 + i)
                for i in range(2)]
        report = correlation_suite(metrics, meas)
        assert report.get("params_vs_footprint").degenerate

    def test_no_overlap_raises(self):
        with pytest.raises(StatsError):
            correlation_suite(_metrics(3), [MeasurementRecord(model_id="other")])

    def test_get_unknown_name(self):
        metrics = _metrics(3)
        meas = [MeasurementRecord(model_id=f"m{i}", footprint_mb=10.0 * (i + 1))
                for i in range(3)]
        with pytest.raises(KeyError):
            correlation_suite(metrics, meas).get("nope")


class TestRoofline:
    def _cost(self, params, acts, macs):
        return ModelCost(layers=(), total_params=params, total_activations=acts,
                         total_macs=macs, convention=Convention.ALL_NODES)

    def test_compute_bound(self):
        cost = self._cost(1000, 1000, 1_000_000)
        res = roofline_classify(cost, 4, MachineSpec(1e12, 1e11))
        assert res.intensity_macs_per_byte == pytest.approx(125.0)
        assert res.bound == "compute"

    def test_bandwidth_bound(self):
        cost = self._cost(1000, 1000, 8000)
        res = roofline_classify(cost, 4, MachineSpec(1e12, 1e11))
        assert res.bound == "bandwidth"

    def test_tie_classifies_compute(self):
        # intensity exactly at the ridge point
        cost = self._cost(500, 500, 40000)
        machine = MachineSpec(1e12, 1e11)
        res = roofline_classify(cost, 4, machine)
        assert res.intensity_macs_per_byte == machine.ridge_point
        assert res.bound == "compute"
