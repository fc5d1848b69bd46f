"""Output-shape inference for every layer kind.

Convolution arithmetic per spatial axis:

    out = floor((in + 2*pad - kernel) / stride) + 1

Pool nodes may opt into ceiling division (Caffe-style), which is required to
reproduce some classic feature-map sizes (e.g. 55 -> 27 with a 3x3/2 pool).
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .graph import Graph, Kind, LayerSpec, TensorShape

ShapeAnnotation = dict[str, TensorShape]


class ShapeError(Exception):
    def __init__(self, message: str, node_id: Optional[str] = None):
        super().__init__(message if node_id is None else f"{node_id}: {message}")
        self.node_id = node_id


def _axis_out(size: int, kernel: int, stride: int, pad: int, ceil_mode: bool) -> int:
    span = size + 2 * pad - kernel
    if span < 0:
        raise ShapeError(
            f"kernel {kernel} larger than padded input {size + 2 * pad}"
        )
    if ceil_mode:
        return -(-span // stride) + 1
    return span // stride + 1


def infer_node(spec: LayerSpec, input_shapes: Sequence[TensorShape]) -> TensorShape:
    """Output shape of one node given its input shapes (producer order)."""
    kind = spec.kind
    if kind == Kind.INPUT:
        raise ShapeError("Input nodes take their shape from the caller", spec.id)

    if kind == Kind.CONV:
        (inp,) = input_shapes
        if inp.channels % spec.groups != 0:
            raise ShapeError(
                f"input channels {inp.channels} not divisible by groups {spec.groups}",
                spec.id,
            )
        kh, kw = spec.kernel
        sh, sw = spec.stride
        ph, pw = spec.padding
        try:
            h = _axis_out(inp.height, kh, sh, ph, False)
            w = _axis_out(inp.width, kw, sw, pw, False)
        except ShapeError as e:
            raise ShapeError(str(e), spec.id) from None
        return TensorShape(spec.out_channels, h, w)

    if kind == Kind.POOL:
        (inp,) = input_shapes
        kh, kw = spec.kernel
        sh, sw = spec.stride
        ph, pw = spec.padding
        try:
            h = _axis_out(inp.height, kh, sh, ph, spec.ceil_mode)
            w = _axis_out(inp.width, kw, sw, pw, spec.ceil_mode)
        except ShapeError as e:
            raise ShapeError(str(e), spec.id) from None
        return TensorShape(inp.channels, h, w)

    if kind == Kind.FC:
        (inp,) = input_shapes
        return TensorShape(spec.out_features, 1, 1)

    if kind == Kind.GLOBAL_POOL:
        (inp,) = input_shapes
        return TensorShape(inp.channels, 1, 1)

    if kind == Kind.CONCAT:
        if len(input_shapes) < 2:
            raise ShapeError("Concat needs at least two inputs", spec.id)
        spatial = input_shapes[0].spatial()
        for s in input_shapes[1:]:
            if s.spatial() != spatial:
                raise ShapeError(
                    f"spatial mismatch in Concat inputs: {spatial} vs {s.spatial()}",
                    spec.id,
                )
        return TensorShape(sum(s.channels for s in input_shapes), *spatial)

    if kind == Kind.ADD:
        if len(input_shapes) < 2:
            raise ShapeError("Add needs at least two inputs", spec.id)
        first = input_shapes[0]
        for s in input_shapes[1:]:
            if s != first:
                raise ShapeError(f"Add inputs differ: {first} vs {s}", spec.id)
        return first

    # shape-preserving unary kinds
    if kind in (Kind.ACTIVATION, Kind.BATCH_NORM, Kind.LRN, Kind.DROPOUT, Kind.SOFTMAX):
        (inp,) = input_shapes
        return inp

    raise ShapeError(f"unhandled kind {kind}", spec.id)


def infer_graph(graph: Graph, input_shape: TensorShape) -> ShapeAnnotation:
    """Annotate every node with its output shape, propagating in topological
    order. Raises ShapeError naming the first failing node."""
    graph.require_valid()
    shapes: ShapeAnnotation = {}
    for nid in graph.topological_order():
        spec = graph.node(nid)
        if spec.kind == Kind.INPUT:
            shapes[nid] = input_shape
            continue
        inputs = [shapes[p] for p in graph.predecessors(nid)]
        shapes[nid] = infer_node(spec, inputs)
    return shapes
