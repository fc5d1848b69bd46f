"""Builders for the twelve characterized architectures.

Builders are pure data constructors: no weights, no randomness. Each model id
maps to one builder plus a default (effective) input size; the nominal size
is what the characterization table prints, which for a few networks differs
from the size the deployed network actually consumes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from ..costs import model_cost
from ..graph import Graph, Kind, TensorShape
from ..shapes import ShapeAnnotation, infer_graph
from .classic import build_alexnet, build_googlenet
from .densenet import build_densenet121
from .inception_v2 import build_inception_v2
from .mobilenet import build_mobilenet
from .squeezenet import build_squeezenet_v10, build_squeezenet_v11
from .squeezenext import BASE_BLOCKS, V5_BLOCKS, build_squeezenext


class ZooError(Exception):
    pass


@dataclass(frozen=True)
class ZooParams:
    """Family-specific knobs. Irrelevant fields are ignored with a warning."""

    width: Optional[float] = None           # SqueezeNext multiplier / MobileNet alpha
    blocks: Optional[tuple[int, int, int, int]] = None  # SqueezeNext group sizes
    grouped: Optional[bool] = None          # SqueezeNext "G" variant
    input_size: Optional[int] = None


@dataclass(frozen=True)
class ZooEntry:
    model_id: str
    family: str
    nominal_input_size: int   # characterization-table "Image size"
    default_input_size: int   # what the builder actually consumes


def _sqnxt(width, blocks, grouped, v5):
    def builder(input_size: int):
        return build_squeezenext(width=width, blocks=blocks, grouped=grouped,
                                 v5=v5, input_size=input_size)
    return builder


_REGISTRY: list[tuple[ZooEntry, Callable[[int], tuple[Graph, TensorShape]]]] = [
    (ZooEntry("AlexNet", "alexnet", 224, 227), build_alexnet),
    (ZooEntry("SqueezeNet-V1.0", "squeezenet", 224, 224), build_squeezenet_v10),
    (ZooEntry("SqueezeNet-V1.1", "squeezenet", 224, 224), build_squeezenet_v11),
    (ZooEntry("1.0-G-SqNxt-23", "squeezenext", 224, 227),
     _sqnxt(1.0, BASE_BLOCKS, True, False)),
    (ZooEntry("1.0-SqNxt-23", "squeezenext", 224, 227),
     _sqnxt(1.0, BASE_BLOCKS, False, False)),
    (ZooEntry("1.0-SqNxt-23v5", "squeezenext", 224, 227),
     _sqnxt(1.0, V5_BLOCKS, False, True)),
    (ZooEntry("2.0-SqNxt-23", "squeezenext", 224, 227),
     _sqnxt(2.0, BASE_BLOCKS, False, False)),
    (ZooEntry("2.0-SqNxt-23v5", "squeezenext", 224, 227),
     _sqnxt(2.0, V5_BLOCKS, False, True)),
    (ZooEntry("1.0-MobileNet-224", "mobilenet", 224, 224),
     lambda size: build_mobilenet(1.0, size)),
    (ZooEntry("DenseNet-121", "densenet", 224, 224), build_densenet121),
    (ZooEntry("GoogLeNet", "inception", 224, 224), build_googlenet),
    (ZooEntry("Inception-V2", "inception", 231, 231), build_inception_v2),
]

_BY_ID = {entry.model_id: (entry, builder) for entry, builder in _REGISTRY}
_CANONICAL = {entry.model_id.lower(): entry.model_id for entry, _ in _REGISTRY}
MODEL_IDS = [entry.model_id for entry, _ in _REGISTRY]


def canonical_id(name: str) -> str:
    try:
        return _CANONICAL[name.lower()]
    except KeyError:
        raise ZooError(f"unknown model id {name!r}; known: {', '.join(MODEL_IDS)}") from None


def list_models() -> list[ZooEntry]:
    return [entry for entry, _ in _REGISTRY]


def build(model_id: str, params: Optional[ZooParams] = None) -> tuple[Graph, TensorShape]:
    """Build one zoo model; returns the graph and its input shape."""
    params = params or ZooParams()
    entry, builder = _BY_ID[canonical_id(model_id)]
    input_size = params.input_size or entry.default_input_size

    if entry.family == "squeezenext":
        # width/blocks/grouped for this family are fixed by the model id
        for name in ("width", "blocks", "grouped"):
            if getattr(params, name) is not None:
                warnings.warn(f"{entry.model_id}: {name} is fixed by the model id; ignored")
        return builder(input_size)
    if entry.family == "mobilenet":
        if params.blocks is not None or params.grouped is not None:
            warnings.warn(f"{entry.model_id}: blocks/grouped not applicable; ignored")
        return build_mobilenet(params.width or 1.0, input_size)
    for name in ("width", "blocks", "grouped"):
        if getattr(params, name) is not None:
            warnings.warn(f"{entry.model_id}: {name} not applicable; ignored")
    return builder(input_size)


def macs_by_kind(graph: Graph, shapes: ShapeAnnotation) -> dict[str, float]:
    """MAC share per operator bucket; shares sum to 1 up to float rounding."""
    totals: dict[str, int] = {}
    grand = 0
    cost = model_cost(graph, shapes)
    per_node = cost.by_node()
    for spec in graph.nodes():
        macs = per_node[spec.id].macs
        if macs == 0:
            continue
        if spec.kind == Kind.FC:
            bucket = "fc"
        else:
            in_ch = shapes[graph.predecessors(spec.id)[0]].channels
            kh, kw = spec.kernel
            if spec.groups == in_ch and spec.out_channels == in_ch:
                bucket = "conv_depthwise"
            elif kh != kw:
                bucket = "conv_asymmetric"
            elif kh == 1:
                bucket = "conv_1x1"
            elif kh >= 5:
                bucket = "conv_large"
            else:
                bucket = "conv_3x3"
        totals[bucket] = totals.get(bucket, 0) + macs
        grand += macs
    if grand == 0:
        return {}
    return {bucket: count / grand for bucket, count in sorted(totals.items())}


def analyze(model_id: str, params: Optional[ZooParams] = None):
    """Convenience: build, validate, infer shapes. Returns (graph, input
    shape, shape annotation)."""
    graph, shape = build(model_id, params)
    return graph, shape, infer_graph(graph, shape)
