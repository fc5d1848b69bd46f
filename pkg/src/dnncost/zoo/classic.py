"""AlexNet and GoogLeNet builders (single-tower Caffe deployments)."""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder


def build_alexnet(input_size: int = 227) -> tuple[Graph, TensorShape]:
    """Single-tower AlexNet. The nominal 224x224 input is 227x227 effective
    in the deployed network; 227 is what reproduces the published counts."""
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    b.conv("conv1", 96, 11, stride=4)
    b.relu("relu1")
    b.lrn("norm1")
    b.pool("pool1", 3, 2)
    b.conv("conv2", 256, 5, padding=2, groups=2)
    b.relu("relu2")
    b.lrn("norm2")
    b.pool("pool2", 3, 2)
    b.conv("conv3", 384, 3, padding=1)
    b.relu("relu3")
    b.conv("conv4", 384, 3, padding=1, groups=2)
    b.relu("relu4")
    b.conv("conv5", 256, 3, padding=1, groups=2)
    b.relu("relu5")
    b.pool("pool5", 3, 2)
    b.fc("fc6", 4096, relu=True, dropout=True)
    b.fc("fc7", 4096, relu=True, dropout=True)
    b.fc("fc8", 1000)
    b.softmax("prob")
    return b.done(), shape


def _inception(b: NetBuilder, name: str, frm: str,
               c1: int, r3: int, c3: int, r5: int, c5: int, proj: int) -> str:
    b1 = b.conv(f"{name}.1x1", c1, 1, frm=frm)
    b1 = b.relu(f"{name}.1x1.relu", frm=b1)
    b2 = b.conv(f"{name}.3x3r", r3, 1, frm=frm)
    b2 = b.relu(f"{name}.3x3r.relu", frm=b2)
    b2 = b.conv(f"{name}.3x3", c3, 3, padding=1, frm=b2)
    b2 = b.relu(f"{name}.3x3.relu", frm=b2)
    b3 = b.conv(f"{name}.5x5r", r5, 1, frm=frm)
    b3 = b.relu(f"{name}.5x5r.relu", frm=b3)
    b3 = b.conv(f"{name}.5x5", c5, 5, padding=2, frm=b3)
    b3 = b.relu(f"{name}.5x5.relu", frm=b3)
    b4 = b.pool(f"{name}.pool", 3, 1, padding=1, frm=frm)
    b4 = b.conv(f"{name}.proj", proj, 1, frm=b4)
    b4 = b.relu(f"{name}.proj.relu", frm=b4)
    return b.concat(f"{name}.out", [b1, b2, b3, b4])


def build_googlenet(input_size: int = 224) -> tuple[Graph, TensorShape]:
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    b.conv("conv1", 64, 7, stride=2, padding=3)
    b.relu("conv1.relu")
    b.pool("pool1", 3, 2, ceil_mode=True)
    b.lrn("norm1")
    b.conv("conv2r", 64, 1)
    b.relu("conv2r.relu")
    b.conv("conv2", 192, 3, padding=1)
    b.relu("conv2.relu")
    b.lrn("norm2")
    x = b.pool("pool2", 3, 2, ceil_mode=True)

    x = _inception(b, "inc3a", x, 64, 96, 128, 16, 32, 32)
    x = _inception(b, "inc3b", x, 128, 128, 192, 32, 96, 64)
    x = b.pool("pool3", 3, 2, ceil_mode=True, frm=x)
    x = _inception(b, "inc4a", x, 192, 96, 208, 16, 48, 64)
    x = _inception(b, "inc4b", x, 160, 112, 224, 24, 64, 64)
    x = _inception(b, "inc4c", x, 128, 128, 256, 24, 64, 64)
    x = _inception(b, "inc4d", x, 112, 144, 288, 32, 64, 64)
    x = _inception(b, "inc4e", x, 256, 160, 320, 32, 128, 128)
    x = b.pool("pool4", 3, 2, ceil_mode=True, frm=x)
    x = _inception(b, "inc5a", x, 256, 160, 320, 32, 128, 128)
    x = _inception(b, "inc5b", x, 384, 192, 384, 48, 128, 128)
    x = b.global_pool("pool5", frm=x)
    x = b.dropout("drop", frm=x)
    b.fc("fc", 1000, frm=x)
    b.softmax("prob")
    return b.done(), shape
