"""Analysis pipeline and report rendering (text, CSV, JSON).

CSV and JSON carry full-precision raw values; the text view rounds the way
the characterization table does (mega-units for counts, two decimals for
ratios). MB at the text boundary means 2^20 bytes.
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from . import zoo
from .costs import Convention, ModelCost, derived_ratios, model_cost
from .graph import Graph, TensorShape
from .io import load_model
from .memory import MemoryEstimate, footprint
from .shapes import infer_graph
from .stats import MachineSpec, RooflineResult, roofline_classify

MB = 1 << 20


@dataclass(frozen=True)
class AnalysisOptions:
    batch: int = 1
    mode: str = "inference"
    convention: Convention = Convention.ALL_NODES
    bytes_per_element: int = 4
    overhead: int = 0
    machine: Optional[MachineSpec] = None
    input_size: Optional[int] = None


@dataclass(frozen=True)
class ModelReport:
    model: str
    input_shape: TensorShape
    cost: ModelCost
    memory: MemoryEstimate
    batch: int
    mode: str
    macs_by_kind: dict[str, float]
    roofline: Optional[RooflineResult] = None

    def row(self) -> dict:
        """Full-precision flat record (raw counts, raw bytes)."""
        ratios = derived_ratios(self.cost)
        row = {
            "model": self.model,
            "input": f"{self.input_shape.channels}x{self.input_shape.height}x{self.input_shape.width}",
            "batch": self.batch,
            "mode": self.mode,
            "convention": self.cost.convention.value,
            "macs": self.cost.total_macs,
            "params": self.cost.total_params,
            "acts": self.cost.total_activations,
            "acts_per_param": ratios.acts_per_param,
            "macs_per_param": ratios.macs_per_param,
            "macs_per_act": ratios.macs_per_act,
            "weight_bytes": self.memory.weight_bytes,
            "peak_activation_bytes": self.memory.peak_activation_bytes,
            "gradient_bytes": self.memory.gradient_bytes,
            "total_bytes": self.memory.total_bytes,
        }
        if self.roofline is not None:
            row["intensity_macs_per_byte"] = self.roofline.intensity_macs_per_byte
            row["ridge_point"] = self.roofline.ridge_point
            row["bound"] = self.roofline.bound
        for bucket, share in self.macs_by_kind.items():
            row[f"macs_share_{bucket}"] = share
        return row


def resolve_model(ref: str, input_size: Optional[int] = None) -> tuple[str, Graph, TensorShape]:
    """A model reference is a zoo id or a path to a model JSON file."""
    try:
        model_id = zoo.canonical_id(ref)
    except zoo.ZooError:
        path = Path(ref)
        if not path.exists():
            raise zoo.ZooError(
                f"{ref!r} is neither a zoo model id nor an existing model file"
            ) from None
        graph, shape = load_model(path)
        if input_size is not None:
            shape = TensorShape(shape.channels, input_size, input_size)
        return path.stem, graph, shape
    graph, shape = zoo.build(model_id, zoo.ZooParams(input_size=input_size))
    return model_id, graph, shape


def analyze(ref: str, options: AnalysisOptions = AnalysisOptions()) -> ModelReport:
    name, graph, shape = resolve_model(ref, options.input_size)
    annotation = infer_graph(graph, shape)
    cost = model_cost(graph, annotation, convention=options.convention)
    memory = footprint(
        graph, annotation,
        batch=options.batch,
        bytes_per_element=options.bytes_per_element,
        mode=options.mode,
        overhead=options.overhead,
        convention=options.convention,
    )
    machine = options.machine
    roofline = (
        roofline_classify(cost, options.bytes_per_element, machine)
        if machine is not None else None
    )
    return ModelReport(
        model=name,
        input_shape=shape,
        cost=cost,
        memory=memory,
        batch=options.batch,
        mode=options.mode,
        macs_by_kind=zoo.macs_by_kind(graph, annotation),
        roofline=roofline,
    )


# -- rendering --------------------------------------------------------------

_TEXT_COLUMNS = [
    ("model", "Model", "{}"),
    ("macs", "MACs (M)", "mega"),
    ("params", "Params (M)", "mega"),
    ("acts", "Acts (M)", "mega"),
    ("acts_per_param", "Acts/Params", "{:.2f}"),
    ("macs_per_param", "MACs/Params", "{:.2f}"),
    ("macs_per_act", "MACs/Acts", "{:.2f}"),
    ("total_bytes", "Footprint (MB)", "mb"),
]


def _text_cell(fmt: str, value) -> str:
    if value is None:
        return "-"
    if fmt == "mega":
        return f"{value / 1e6:.2f}"
    if fmt == "mb":
        return f"{value / MB:.1f}"
    return fmt.format(value)


def render_text(rows: Sequence[dict]) -> str:
    extra = []
    if any("bound" in r for r in rows):
        extra.append(("bound", "Roofline", "{}"))
    columns = _TEXT_COLUMNS + extra
    table = [[header for _, header, _ in columns]]
    for r in rows:
        table.append([_text_cell(fmt, r.get(key)) for key, _, fmt in columns])
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    out = []
    for i, line in enumerate(table):
        out.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def render_csv(rows: Sequence[dict]) -> str:
    fields: list[str] = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _csv_value(v) for k, v in r.items()})
    return buf.getvalue()


def _csv_value(v):
    if isinstance(v, float):
        return repr(v)
    return v


def render_json(rows: Sequence[dict]) -> str:
    payload = rows[0] if len(rows) == 1 else list(rows)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "text":
        return render_text(rows)
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "json":
        return render_json(rows)
    raise ValueError(f"unknown format {fmt!r}")
