"""Small helper for assembling feed-forward graphs with branches."""

from __future__ import annotations

from typing import Optional, Sequence

from ..graph import (
    Graph,
    Kind,
    LayerSpec,
    TensorShape,
    conv2d,
    fully_connected,
    input_spec,
    pool,
    simple,
)


class NetBuilder:
    def __init__(self, input_shape: TensorShape, input_id: str = "input"):
        self.graph = Graph()
        self.input_shape = input_shape
        self.graph.add_node(input_spec(input_id))
        self.last = input_id

    def _attach(self, spec: LayerSpec, frm) -> str:
        self.graph.add_node(spec)
        sources = [self.last] if frm is None else ([frm] if isinstance(frm, str) else list(frm))
        for src in sources:
            self.graph.connect(src, spec.id)
        self.last = spec.id
        return spec.id

    def conv(self, name, out_channels, kernel, stride=1, padding=0, groups=1,
             bn=False, relu=False, frm=None) -> str:
        nid = self._attach(conv2d(name, out_channels, kernel, stride, padding, groups), frm)
        if bn:
            nid = self.bn(f"{name}.bn", frm=nid)
        if relu:
            nid = self._attach(simple(f"{name}.relu", Kind.ACTIVATION), nid)
        return nid

    def pool(self, name, kernel, stride, padding=0, pool_kind="max",
             ceil_mode=False, frm=None) -> str:
        return self._attach(
            pool(name, kernel, stride, padding, pool_kind, ceil_mode), frm
        )

    def fc(self, name, out_features, relu=False, dropout=False, frm=None) -> str:
        nid = self._attach(fully_connected(name, out_features), frm)
        if relu:
            nid = self._attach(simple(f"{name}.relu", Kind.ACTIVATION), nid)
        if dropout:
            nid = self._attach(simple(f"{name}.drop", Kind.DROPOUT), nid)
        return nid

    def relu(self, name, frm=None) -> str:
        return self._attach(simple(name, Kind.ACTIVATION), frm)

    def bn(self, name, frm=None) -> str:
        # Caffe runs batch norm as a statistics layer followed by an in-place
        # elementwise scale layer; both outputs count. The learned per-channel
        # affine pair lives on the BatchNorm node, the scale companion is
        # parameter-free.
        nid = self._attach(simple(name, Kind.BATCH_NORM), frm)
        return self._attach(simple(f"{name}.scale", Kind.ACTIVATION), nid)

    def lrn(self, name, frm=None) -> str:
        return self._attach(simple(name, Kind.LRN), frm)

    def dropout(self, name, frm=None) -> str:
        return self._attach(simple(name, Kind.DROPOUT), frm)

    def concat(self, name, inputs: Sequence[str]) -> str:
        return self._attach(simple(name, Kind.CONCAT), inputs)

    def add(self, name, inputs: Sequence[str]) -> str:
        return self._attach(simple(name, Kind.ADD), inputs)

    def global_pool(self, name, frm=None) -> str:
        return self._attach(simple(name, Kind.GLOBAL_POOL), frm)

    def softmax(self, name, frm=None) -> str:
        return self._attach(simple(name, Kind.SOFTMAX), frm)

    def done(self) -> Graph:
        self.graph.require_valid()
        return self.graph
