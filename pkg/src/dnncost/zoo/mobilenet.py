"""MobileNet builder: depthwise separable stacks with batch norm."""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder

# (pointwise output channels, depthwise stride) per separable block
_BLOCKS = [
    (64, 1), (128, 2), (128, 1), (256, 2), (256, 1), (512, 2),
    (512, 1), (512, 1), (512, 1), (512, 1), (512, 1), (1024, 2), (1024, 1),
]


def build_mobilenet(alpha: float = 1.0, input_size: int = 224) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    ch = int(32 * alpha)
    x = b.conv("conv1", ch, 3, stride=2, padding=1, bn=True, relu=True)
    for i, (out, stride) in enumerate(_BLOCKS, start=1):
        out = int(out * alpha)
        x = b.conv(f"dw{i}", ch, 3, stride=stride, padding=1, groups=ch,
                   bn=True, relu=True, frm=x)
        x = b.conv(f"pw{i}", out, 1, bn=True, relu=True, frm=x)
        ch = out
    x = b.global_pool("pool", frm=x)
    b.fc("fc", 1000, frm=x)
    b.softmax("prob")
    return b.done(), shape
