"""SqueezeNext-23 family builder.

23 building blocks: a stem convolution, 21 fire blocks in four groups, and a
1x1 bottleneck before the classifier. Each fire block stacks a two-stage 1x1
bottleneck, decomposed 3x1/1x3 filters, a 1x1 expansion, and a skip
connection across the block. Group distribution is [6,6,8,1] for the base
variants and [2,4,14,1] for v5; group input resolutions at 227x227 input are
55 (64ch), 55 (32ch), 28 (64ch) and 14 (128ch).

Details this network family leaves open are pinned as follows, tuned only
within the published description (see module tests for the tolerances):
  - v5 variants use a 5x5 stem instead of 7x7 (this is what accounts for
    their lower MAC count; block redistribution alone is MAC-neutral here).
  - The width multiplier scales the four block groups and the pre-classifier
    bottleneck, not the stem.
  - The "G" variant applies group size 2 to the 3x1 and 1x3 convolutions.
"""

from __future__ import annotations

from ..graph import Graph, TensorShape
from ._builder import NetBuilder

BASE_BLOCKS = (6, 6, 8, 1)
V5_BLOCKS = (2, 4, 14, 1)
_STAGE_WIDTHS = (32, 64, 128, 256)


def _block(b: NetBuilder, name: str, frm: str, in_ch: int, out_ch: int,
           stride: int, grouped: bool) -> str:
    if stride == 2:
        red, resize = 1, True
    elif in_ch > out_ch:
        red, resize = 4, True
    else:
        red, resize = 2, False
    g = 2 if grouped else 1
    x = b.conv(f"{name}.sq1", in_ch // red, 1, stride=stride, bn=True, relu=True, frm=frm)
    x = b.conv(f"{name}.sq2", in_ch // (2 * red), 1, bn=True, relu=True, frm=x)
    x = b.conv(f"{name}.c1x3", in_ch // red, (1, 3), padding=(0, 1), groups=g,
               bn=True, relu=True, frm=x)
    x = b.conv(f"{name}.c3x1", in_ch // red, (3, 1), padding=(1, 0), groups=g,
               bn=True, relu=True, frm=x)
    x = b.conv(f"{name}.expand", out_ch, 1, bn=True, relu=True, frm=x)
    if resize:
        sc = b.conv(f"{name}.shortcut", out_ch, 1, stride=stride, bn=True,
                    relu=True, frm=frm)
    else:
        sc = frm
    x = b.add(f"{name}.add", [x, sc])
    return b.relu(f"{name}.out", frm=x)


def build_squeezenext(
    width: float = 1.0,
    blocks: tuple[int, int, int, int] = BASE_BLOCKS,
    grouped: bool = False,
    v5: bool = False,
    input_size: int = 227,
) -> tuple[Graph, TensorShape]:
    if len(blocks) != 4 or sum(blocks) != 21:
        raise ValueError(f"block distribution must have 4 groups summing to 21, got {blocks}")
    shape = TensorShape(3, input_size, input_size)
    b = NetBuilder(shape)
    stem_kernel = 5 if v5 else 7
    x = b.conv("conv1", 64, stem_kernel, stride=2, bn=True, relu=True)
    x = b.pool("pool1", 3, 2, frm=x)
    in_ch = 64
    for gi, (count, base_width) in enumerate(zip(blocks, _STAGE_WIDTHS), start=1):
        out_ch = int(base_width * width)
        for bi in range(count):
            stride = 2 if (gi > 1 and bi == 0) else 1
            x = _block(b, f"g{gi}.b{bi}", x, in_ch, out_ch, stride, grouped)
            in_ch = out_ch
    x = b.conv("bottleneck", int(128 * width), 1, bn=True, relu=True, frm=x)
    x = b.global_pool("pool_final", frm=x)
    b.fc("fc", 1000, frm=x)
    b.softmax("prob")
    return b.done(), shape
