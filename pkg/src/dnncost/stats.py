"""Correlation and arithmetic-intensity analysis.

Pearson product-moment correlation (PPMCC) over model metrics joined with
externally measured quantities, plus a simple roofline classification where
MACs/parameter and MACs/activation proxy arithmetic intensity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .costs import ModelCost


class StatsError(Exception):
    pass


@dataclass(frozen=True)
class MeasurementRecord:
    """Externally measured quantities for one model (GPU runs, profilers)."""

    model_id: str
    batch: Optional[int] = None  # None means unspecified
    footprint_mb: Optional[float] = None
    inference_ms: Optional[float] = None
    energy_eff_gmacs_per_joule: Optional[float] = None
    throughput_fps: Optional[float] = None
    gemv2t_pct: Optional[float] = None
    gemv2n_pct: Optional[float] = None
    gemmk1_pct: Optional[float] = None

    def __post_init__(self):
        for name in ("gemv2t_pct", "gemv2n_pct", "gemmk1_pct"):
            v = getattr(self, name)
            if v is not None and not (0.0 <= v <= 100.0):
                raise StatsError(f"{name} must lie in [0, 100], got {v}")


@dataclass(frozen=True)
class ModelMetrics:
    """Computed (or fixture) count metrics for one model, raw units."""

    model_id: str
    params: float
    activations: float
    macs: float

    @property
    def acts_per_param(self) -> float:
        return self.activations / self.params

    @property
    def macs_per_param(self) -> float:
        return self.macs / self.params

    @property
    def macs_per_act(self) -> float:
        return self.macs / self.activations


@dataclass(frozen=True)
class MachineSpec:
    peak_macs_per_s: float
    peak_bytes_per_s: float

    def __post_init__(self):
        if self.peak_macs_per_s <= 0 or self.peak_bytes_per_s < 0:
            raise StatsError("machine peaks must be positive")

    @property
    def ridge_point(self) -> float:
        """Arithmetic intensity (MACs/byte) separating the two regimes."""
        if self.peak_bytes_per_s == 0:
            return 0.0
        return self.peak_macs_per_s / self.peak_bytes_per_s


def ppmcc(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson r. Symmetric, invariant under positive affine transforms."""
    if len(xs) != len(ys):
        raise StatsError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise StatsError("need at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise StatsError("zero variance in one of the arguments")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


@dataclass(frozen=True)
class CorrelationEntry:
    name: str
    r: float
    pairs: int
    degenerate: bool  # two points are always perfectly collinear


@dataclass(frozen=True)
class CorrelationReport:
    entries: tuple[CorrelationEntry, ...]

    def get(self, name: str) -> CorrelationEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def footprint_to_modelsize_ratio(
    footprint_mb: float, params: float, bytes_per_param: int = 4
) -> float:
    """Measured footprint over model size (params * element width).

    Model size MB uses decimal megabytes, matching the published AlexNet
    back-calculation (1015 MB / 243.9 MB = 4.16).
    """
    if params <= 0:
        raise StatsError("params must be positive")
    return footprint_mb / (params * bytes_per_param / 1e6)


def correlation_suite(
    metrics: Sequence[ModelMetrics],
    measurements: Sequence[MeasurementRecord],
    bytes_per_param: int = 4,
) -> CorrelationReport:
    """Named PPMCCs joining computed metrics with measurements by model id."""
    by_id = {m.model_id: m for m in metrics}
    joined = [(by_id[r.model_id], r) for r in measurements if r.model_id in by_id]

    def collect(metric_fn, measure_fn, name) -> Optional[CorrelationEntry]:
        pts = [
            (metric_fn(m), measure_fn(m, r))
            for m, r in joined
            if measure_fn(m, r) is not None
        ]
        if len(pts) < 2:
            return None
        xs, ys = zip(*pts)
        try:
            r = ppmcc(xs, ys)
        except StatsError:
            # constant column; correlation undefined, skip the entry
            return None
        return CorrelationEntry(name, r, len(pts), degenerate=len(pts) == 2)

    def fp(m, r):
        return r.footprint_mb

    def fp_per_size(m, r):
        if r.footprint_mb is None:
            return None
        return footprint_to_modelsize_ratio(r.footprint_mb, m.params, bytes_per_param)

    def energy(m, r):
        return r.energy_eff_gmacs_per_joule

    pairs = [
        (lambda m: m.params, fp, "params_vs_footprint"),
        (lambda m: m.activations, fp, "acts_vs_footprint"),
        (lambda m: m.params + m.activations, fp, "params_plus_acts_vs_footprint"),
        (lambda m: m.acts_per_param, fp_per_size, "acts_per_param_vs_footprint_per_modelsize"),
        (lambda m: m.macs_per_param, energy, "energy_eff_vs_macs_per_param"),
        (lambda m: m.macs_per_act, energy, "energy_eff_vs_macs_per_act"),
    ]
    entries = []
    for metric_fn, measure_fn, name in pairs:
        e = collect(metric_fn, measure_fn, name)
        if e is not None:
            entries.append(e)
    if not entries:
        raise StatsError("insufficient overlap between metrics and measurements")
    return CorrelationReport(tuple(entries))


@dataclass(frozen=True)
class RooflineResult:
    intensity_macs_per_byte: float
    ridge_point: float
    bound: str  # "compute" | "bandwidth"


def roofline_classify(
    cost: ModelCost, bytes_per_element: int, machine: MachineSpec
) -> RooflineResult:
    """Classify against a machine's ridge point.

    Traffic model: every parameter and every activation moves exactly once
    (lower bound). Ties at the ridge point classify as compute-bound.
    """
    traffic = (cost.total_params + cost.total_activations) * bytes_per_element
    intensity = cost.total_macs / traffic if traffic else math.inf
    ridge = machine.ridge_point
    bound = "compute" if intensity >= ridge else "bandwidth"
    return RooflineResult(intensity, ridge, bound)
