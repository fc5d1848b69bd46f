"""Inception-V2 (batch-normalized GoogLeNet) builder.

Inception modules with the 5x5 branch factorized into a double-3x3 branch,
batch norm on every convolution, and two stride-2 grid-reduction modules
whose pooling branch passes the input channels through. Default input size
follows the characterization table (231x231).
"""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder


def _module(b: NetBuilder, name: str, frm: str, c1: int, r3: int, c3: int,
            dr: int, d3: int, proj: int, pool_kind: str = "avg") -> str:
    branches = []
    b1 = b.conv(f"{name}.1x1", c1, 1, bn=True, relu=True, frm=frm)
    branches.append(b1)
    b2 = b.conv(f"{name}.3x3r", r3, 1, bn=True, relu=True, frm=frm)
    b2 = b.conv(f"{name}.3x3", c3, 3, padding=1, bn=True, relu=True, frm=b2)
    branches.append(b2)
    b3 = b.conv(f"{name}.d3x3r", dr, 1, bn=True, relu=True, frm=frm)
    b3 = b.conv(f"{name}.d3x3a", d3, 3, padding=1, bn=True, relu=True, frm=b3)
    b3 = b.conv(f"{name}.d3x3b", d3, 3, padding=1, bn=True, relu=True, frm=b3)
    branches.append(b3)
    b4 = b.pool(f"{name}.pool", 3, 1, padding=1, pool_kind=pool_kind, frm=frm)
    b4 = b.conv(f"{name}.proj", proj, 1, bn=True, relu=True, frm=b4)
    branches.append(b4)
    return b.concat(f"{name}.out", branches)


def _reduction(b: NetBuilder, name: str, frm: str, r3: int, c3: int,
               dr: int, d3: int) -> str:
    b2 = b.conv(f"{name}.3x3r", r3, 1, bn=True, relu=True, frm=frm)
    b2 = b.conv(f"{name}.3x3", c3, 3, stride=2, padding=1, bn=True, relu=True, frm=b2)
    b3 = b.conv(f"{name}.d3x3r", dr, 1, bn=True, relu=True, frm=frm)
    b3 = b.conv(f"{name}.d3x3a", d3, 3, padding=1, bn=True, relu=True, frm=b3)
    b3 = b.conv(f"{name}.d3x3b", d3, 3, stride=2, padding=1, bn=True, relu=True, frm=b3)
    b4 = b.pool(f"{name}.pool", 3, 2, ceil_mode=True, frm=frm)
    return b.concat(f"{name}.out", [b2, b3, b4])


def build_inception_v2(input_size: int = 231) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    x = b.conv("conv1", 64, 7, stride=2, padding=3, bn=True, relu=True)
    x = b.pool("pool1", 3, 2, ceil_mode=True, frm=x)
    x = b.conv("conv2r", 64, 1, bn=True, relu=True, frm=x)
    x = b.conv("conv2", 192, 3, padding=1, bn=True, relu=True, frm=x)
    x = b.pool("pool2", 3, 2, frm=x)

    x = _module(b, "inc3a", x, 64, 64, 64, 64, 96, 32)
    x = _module(b, "inc3b", x, 64, 64, 96, 64, 96, 64)
    x = _reduction(b, "inc3c", x, 128, 160, 64, 96)
    x = _module(b, "inc4a", x, 224, 64, 96, 96, 128, 128)
    x = _module(b, "inc4b", x, 192, 96, 128, 96, 128, 128)
    x = _module(b, "inc4c", x, 160, 128, 160, 128, 160, 96)
    x = _module(b, "inc4d", x, 96, 128, 192, 160, 192, 96)
    x = _reduction(b, "inc4e", x, 128, 192, 192, 256)
    x = _module(b, "inc5a", x, 352, 192, 320, 160, 224, 128)
    x = _module(b, "inc5b", x, 352, 192, 320, 192, 224, 128, pool_kind="max")
    x = b.global_pool("pool5", frm=x)
    b.fc("fc", 1000, frm=x)
    b.softmax("prob")
    return b.done(), shape
