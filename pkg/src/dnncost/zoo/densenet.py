"""DenseNet-121 builder.

Dense blocks of [6, 12, 24, 16] layers at growth rate 32 with 128-wide
(4x growth) 1x1 bottlenecks; halving transitions between blocks. Every layer
consumes the channel-concatenation of all earlier outputs in its block, which
is what drives this network's activation count and footprint.
"""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder

_BLOCK_LAYERS = (6, 12, 24, 16)
_GROWTH = 32
_BOTTLENECK = 4 * _GROWTH


def _dense_layer(b: NetBuilder, name: str, features: str) -> str:
    x = b.bn(f"{name}.bn1", frm=features)
    x = b.relu(f"{name}.relu1", frm=x)
    x = b.conv(f"{name}.conv1", _BOTTLENECK, 1, frm=x)
    x = b.bn(f"{name}.bn2", frm=x)
    x = b.relu(f"{name}.relu2", frm=x)
    x = b.conv(f"{name}.conv2", _GROWTH, 3, padding=1, frm=x)
    return b.concat(f"{name}.concat", [features, x])


def _transition(b: NetBuilder, name: str, frm: str, out_ch: int) -> str:
    x = b.bn(f"{name}.bn", frm=frm)
    x = b.relu(f"{name}.relu", frm=x)
    x = b.conv(f"{name}.conv", out_ch, 1, frm=x)
    return b.pool(f"{name}.pool", 2, 2, pool_kind="avg", frm=x)


def build_densenet121(input_size: int = 224) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    x = b.conv("conv1", 64, 7, stride=2, padding=3, bn=True, relu=True)
    x = b.pool("pool1", 3, 2, padding=1, frm=x)
    ch = 64
    for bi, layers in enumerate(_BLOCK_LAYERS, start=1):
        for li in range(layers):
            x = _dense_layer(b, f"block{bi}.layer{li}", x)
            ch += _GROWTH
        if bi < len(_BLOCK_LAYERS):
            ch //= 2
            x = _transition(b, f"trans{bi}", x, ch)
    x = b.bn("final.bn", frm=x)
    x = b.relu("final.relu", frm=x)
    x = b.global_pool("final.pool", frm=x)
    b.fc("fc", 1000, frm=x)
    b.softmax("prob")
    return b.done(), shape
