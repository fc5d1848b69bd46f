"""SqueezeNet V1.0 / V1.1 builders.

Eight fire modules (fire2 - fire9), each a 1x1 squeeze layer feeding parallel
1x1 and 3x3 expand layers whose outputs concatenate. V1.1 shrinks conv1 to
3x3/64 and pulls the pooling layers earlier. Built at the 224x224 size the
characterization table lists; Caffe-style ceil pooling.
"""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder


def _fire(b: NetBuilder, name: str, frm: str, squeeze: int, expand: int) -> str:
    s = b.conv(f"{name}.squeeze", squeeze, 1, frm=frm)
    s = b.relu(f"{name}.squeeze.relu", frm=s)
    e1 = b.conv(f"{name}.expand1x1", expand, 1, frm=s)
    e1 = b.relu(f"{name}.expand1x1.relu", frm=e1)
    e3 = b.conv(f"{name}.expand3x3", expand, 3, padding=1, frm=s)
    e3 = b.relu(f"{name}.expand3x3.relu", frm=e3)
    return b.concat(f"{name}.concat", [e1, e3])


def _head(b: NetBuilder, x: str) -> None:
    x = b.dropout("drop9", frm=x)
    x = b.conv("conv10", 1000, 1, frm=x)
    x = b.relu("conv10.relu", frm=x)
    x = b.global_pool("pool10", frm=x)
    b.softmax("prob", frm=x)


def build_squeezenet_v10(input_size: int = 224) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    x = b.conv("conv1", 96, 7, stride=2)
    x = b.relu("conv1.relu", frm=x)
    x = b.pool("pool1", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire2", x, 16, 64)
    x = _fire(b, "fire3", x, 16, 64)
    x = _fire(b, "fire4", x, 32, 128)
    x = b.pool("pool4", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire5", x, 32, 128)
    x = _fire(b, "fire6", x, 48, 192)
    x = _fire(b, "fire7", x, 48, 192)
    x = _fire(b, "fire8", x, 64, 256)
    x = b.pool("pool8", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire9", x, 64, 256)
    _head(b, x)
    return b.done(), shape


def build_squeezenet_v11(input_size: int = 224) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    x = b.conv("conv1", 64, 3, stride=2)
    x = b.relu("conv1.relu", frm=x)
    x = b.pool("pool1", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire2", x, 16, 64)
    x = _fire(b, "fire3", x, 16, 64)
    x = b.pool("pool3", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire4", x, 32, 128)
    x = _fire(b, "fire5", x, 32, 128)
    x = b.pool("pool5", 3, 2, ceil_mode=True, frm=x)
    x = _fire(b, "fire6", x, 48, 192)
    x = _fire(b, "fire7", x, 48, 192)
    x = _fire(b, "fire8", x, 64, 256)
    x = _fire(b, "fire9", x, 64, 256)
    _head(b, x)
    return b.done(), shape
