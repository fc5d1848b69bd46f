"""Memory-footprint estimation: weights plus liveness-scheduled activations.

Total footprint decomposes into weight bytes, peak live activation bytes,
gradient bytes (training only) and a configurable fixed overhead. Inference
uses last-use liveness over a topological schedule; training conservatively
keeps every activation live for the backward pass.

Measured GPU totals additionally include framework/context overhead, so only
slopes and orderings are comparable with real measurements, never absolutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .costs import Convention, model_cost
from .graph import Graph, INPLACE_KINDS, Kind, TensorShape
from .shapes import ShapeAnnotation


class MemoryError_(Exception):
    pass


@dataclass(frozen=True)
class MemoryEstimate:
    weight_bytes: int
    peak_activation_bytes: int
    gradient_bytes: int
    fixed_overhead_bytes: int

    @property
    def total_bytes(self) -> int:
        return (
            self.weight_bytes
            + self.peak_activation_bytes
            + self.gradient_bytes
            + self.fixed_overhead_bytes
        )


def _buffer_roots(graph: Graph, order: Sequence[str], inplace_aliasing: bool) -> dict[str, str]:
    """Map node id -> id of the buffer its output lives in.

    With aliasing enabled, in-place kinds (ReLU, Dropout) write into their
    producer's buffer, so chains collapse to one buffer.
    """
    root: dict[str, str] = {}
    for nid in order:
        spec = graph.node(nid)
        preds = graph.predecessors(nid)
        if inplace_aliasing and spec.kind in INPLACE_KINDS and preds:
            root[nid] = root[preds[0]]
        else:
            root[nid] = nid
    return root


def liveness_peak(
    graph: Graph,
    shapes: ShapeAnnotation,
    order: Optional[Sequence[str]] = None,
    inplace_aliasing: bool = True,
) -> int:
    """Peak sum of live tensor elements (batch one) over an execution schedule.

    A buffer becomes live when its first writer executes and dies after its
    last reader executes; graph outputs stay live to the end. The executing
    node's inputs and output are both live at its step.
    """
    graph.require_valid()
    if order is None:
        order = graph.topological_order()
    else:
        if sorted(order) != sorted(graph.node_ids):
            raise MemoryError_("order must be a permutation of the graph's nodes")
        pos = {nid: i for i, nid in enumerate(order)}
        for src, dst in graph.edges:
            if pos[src] >= pos[dst]:
                raise MemoryError_(f"order is not topological: {src!r} after {dst!r}")

    root = _buffer_roots(graph, order, inplace_aliasing)
    pos = {nid: i for i, nid in enumerate(order)}
    outputs = set(graph.output_ids)

    # last step at which each buffer is read or written
    last_use: dict[str, int] = {}
    for nid in order:
        b = root[nid]
        last_use[b] = max(last_use.get(b, -1), pos[nid])
        for consumer in graph.successors(nid):
            last_use[b] = max(last_use[b], pos[consumer])
    end = len(order) - 1
    for nid in outputs:
        last_use[root[nid]] = end

    first_write = {}
    for nid in order:
        b = root[nid]
        first_write.setdefault(b, pos[nid])

    size = {b: shapes[b].element_count() for b in set(root.values())}

    peak = 0
    live = 0
    # event sweep: buffers enter at first write, leave after last use
    births: dict[int, list[str]] = {}
    deaths: dict[int, list[str]] = {}
    for b in size:
        births.setdefault(first_write[b], []).append(b)
        deaths.setdefault(last_use[b], []).append(b)
    for step in range(len(order)):
        for b in births.get(step, ()):
            live += size[b]
        peak = max(peak, live)
        for b in deaths.get(step, ()):
            live -= size[b]
    return peak


def footprint(
    graph: Graph,
    shapes: ShapeAnnotation,
    batch: int = 1,
    bytes_per_element: int = 4,
    mode: str = "inference",
    overhead: int = 0,
    convention: Convention = Convention.ALL_NODES,
    inplace_aliasing: bool = True,
    include_bias: bool = False,
) -> MemoryEstimate:
    """Footprint estimate at a given batch size and precision."""
    if batch < 1:
        raise MemoryError_(f"batch must be >= 1, got {batch}")
    if bytes_per_element not in (1, 2, 4, 8):
        raise MemoryError_(f"bytes_per_element must be one of 1/2/4/8, got {bytes_per_element}")
    if mode not in ("inference", "training"):
        raise MemoryError_(f"mode must be 'inference' or 'training', got {mode!r}")

    cost = model_cost(graph, shapes, convention=convention, include_bias=include_bias)
    weight_bytes = cost.total_params * bytes_per_element
    if mode == "inference":
        peak = liveness_peak(graph, shapes, inplace_aliasing=inplace_aliasing)
        activation_bytes = peak * batch * bytes_per_element
        gradient_bytes = 0
    else:
        # backward pass needs every activation; gradients mirror params + acts
        activation_bytes = cost.total_activations * batch * bytes_per_element
        gradient_bytes = (cost.total_params + cost.total_activations * batch) * bytes_per_element
    return MemoryEstimate(
        weight_bytes=weight_bytes,
        peak_activation_bytes=activation_bytes,
        gradient_bytes=gradient_bytes,
        fixed_overhead_bytes=overhead,
    )


def footprint_vs_batch(
    graph: Graph,
    shapes: ShapeAnnotation,
    batches: Sequence[int],
    **config,
) -> list[tuple[int, MemoryEstimate]]:
    if not batches:
        raise MemoryError_("batch list must be non-empty")
    return [(b, footprint(graph, shapes, batch=b, **config)) for b in batches]
