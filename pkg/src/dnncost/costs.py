"""Parameter, activation and MAC counting.

Per-layer counts for a standard convolution with N input channels, M output
channels, SF x SF filters and SM x SM output maps:

    params      = N * M * SF * SF            (grouped: N/g * M * SFh * SFw)
    activations = M * SM * SM
    MACs        = N * M * SM * SM * SF * SF  (grouped: divide N by g)

One MAC is one multiply-accumulate; no FLOP doubling anywhere. All counts are
exact integers; conversion to mega-units happens only at reporting time.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .graph import Graph, Kind, LayerSpec, TensorShape
from .shapes import ShapeAnnotation, infer_node


class Convention(str, Enum):
    """Which node outputs count as activations.

    ALL_NODES counts every node's output tensor once, approximating what a
    framework materializes (the convention that reaches AlexNet's ~2.05M).
    WEIGHTED_ONLY counts only Conv2d / FullyConnected outputs.
    """

    ALL_NODES = "all-nodes"
    WEIGHTED_ONLY = "weighted-only"


@dataclass(frozen=True)
class LayerCost:
    node_id: str
    params: int
    activations: int
    macs: int


@dataclass(frozen=True)
class ModelCost:
    layers: tuple[LayerCost, ...]
    total_params: int
    total_activations: int
    total_macs: int
    convention: Convention

    def by_node(self) -> dict[str, LayerCost]:
        return {lc.node_id: lc for lc in self.layers}


@dataclass(frozen=True)
class RatioMetrics:
    acts_per_param: float
    macs_per_param: float
    macs_per_act: float


class CostError(Exception):
    pass


def layer_params(spec: LayerSpec, input_shape: TensorShape, include_bias: bool = False) -> int:
    """Learned-weight count for one layer."""
    if spec.kind == Kind.CONV:
        n = input_shape.channels
        if n % spec.groups != 0:
            raise CostError(f"{spec.id}: channels {n} not divisible by groups {spec.groups}")
        kh, kw = spec.kernel
        count = (n // spec.groups) * spec.out_channels * kh * kw
        if include_bias and spec.has_bias:
            count += spec.out_channels
        return count
    if spec.kind == Kind.FC:
        count = input_shape.element_count() * spec.out_features
        if include_bias and spec.has_bias:
            count += spec.out_features
        return count
    if spec.kind == Kind.BATCH_NORM:
        # learned scale and shift per channel
        return 2 * input_shape.channels
    return 0


def layer_activations(spec: LayerSpec, output_shape: TensorShape) -> int:
    """Output element count at batch size one."""
    return output_shape.element_count()


def layer_macs(spec: LayerSpec, input_shape: TensorShape, output_shape: TensorShape) -> int:
    """Multiply-accumulate count for one layer at batch size one."""
    if spec.kind == Kind.CONV:
        n = input_shape.channels
        if n % spec.groups != 0:
            raise CostError(f"{spec.id}: channels {n} not divisible by groups {spec.groups}")
        kh, kw = spec.kernel
        return (n // spec.groups) * spec.out_channels * output_shape.height * output_shape.width * kh * kw
    if spec.kind == Kind.FC:
        return input_shape.element_count() * spec.out_features
    return 0


def model_cost(
    graph: Graph,
    shapes: ShapeAnnotation,
    convention: Convention = Convention.ALL_NODES,
    include_bias: bool = False,
) -> ModelCost:
    """Per-layer and total costs over a validated, shape-annotated graph."""
    layers: list[LayerCost] = []
    for nid in graph.topological_order():
        spec = graph.node(nid)
        out_shape = shapes[nid]
        preds = graph.predecessors(nid)
        in_shape = shapes[preds[0]] if preds else out_shape
        params = layer_params(spec, in_shape, include_bias)
        macs = layer_macs(spec, in_shape, out_shape)
        if convention == Convention.ALL_NODES or spec.kind in (Kind.CONV, Kind.FC):
            acts = layer_activations(spec, out_shape)
        else:
            acts = 0
        layers.append(LayerCost(nid, params, acts, macs))
    return ModelCost(
        layers=tuple(layers),
        total_params=sum(lc.params for lc in layers),
        total_activations=sum(lc.activations for lc in layers),
        total_macs=sum(lc.macs for lc in layers),
        convention=convention,
    )


def derived_ratios(cost: ModelCost) -> RatioMetrics:
    if cost.total_params <= 0 or cost.total_activations <= 0:
        raise CostError("ratio denominators must be positive")
    return RatioMetrics(
        acts_per_param=cost.total_activations / cost.total_params,
        macs_per_param=cost.total_macs / cost.total_params,
        macs_per_act=cost.total_macs / cost.total_activations,
    )


# -- filter-factorization comparison ---------------------------------------

@dataclass(frozen=True)
class FactorizationDelta:
    original_params: int
    replacement_params: int
    original_activations: int
    replacement_activations: int
    original_macs: int
    replacement_macs: int

    def pct(self, before: float, after: float) -> float:
        return (after / before - 1.0) * 100.0

    @property
    def params_pct(self) -> float:
        return self.pct(self.original_params, self.replacement_params)

    @property
    def activations_pct(self) -> float:
        return self.pct(self.original_activations, self.replacement_activations)

    @property
    def macs_pct(self) -> float:
        return self.pct(self.original_macs, self.replacement_macs)

    @property
    def macs_per_param_pct(self) -> float:
        return self.pct(
            self.original_macs / self.original_params,
            self.replacement_macs / self.replacement_params,
        )

    @property
    def macs_per_act_pct(self) -> float:
        return self.pct(
            self.original_macs / self.original_activations,
            self.replacement_macs / self.replacement_activations,
        )


def factorization_compare(
    original: LayerSpec,
    replacement: Sequence[LayerSpec],
    input_shape: TensorShape,
) -> FactorizationDelta:
    """Compare one convolution against a chain of convolutions.

    Replacement activations are summed over every intermediate output (each
    one is materialized), so a 5x5 -> two 3x3 rewrite at 224x224 shows the
    ~+102% activation growth alongside its parameter and MAC savings.
    """
    if original.kind != Kind.CONV or any(s.kind != Kind.CONV for s in replacement):
        raise CostError("factorization_compare handles Conv2d specs only")
    if not replacement:
        raise CostError("replacement chain is empty")

    orig_out = infer_node(original, [input_shape])
    o_params = layer_params(original, input_shape)
    o_acts = layer_activations(original, orig_out)
    o_macs = layer_macs(original, input_shape, orig_out)

    r_params = r_acts = r_macs = 0
    shape = input_shape
    for spec in replacement:
        out = infer_node(spec, [shape])
        r_params += layer_params(spec, shape)
        r_acts += layer_activations(spec, out)
        r_macs += layer_macs(spec, shape, out)
        shape = out
    if shape != orig_out:
        raise CostError(
            f"replacement chain output {shape} does not match original output {orig_out}"
        )
    return FactorizationDelta(o_params, r_params, o_acts, r_acts, o_macs, r_macs)
