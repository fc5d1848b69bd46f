"""Serialization: model files (JSON) and measurement tables (CSV).

Model file schema, version 1:

    {
      "format_version": 1,
      "input": {"channels": C, "height": H, "width": W},
      "nodes": [
        {"id": "...", "kind": "Conv2d", "attributes": {...}, "inputs": ["..."]},
        ...
      ]
    }

Nodes appear in insertion order and `inputs` lists producer ids in edge
order, so serialize -> parse round-trips to an identical graph.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Union

from .graph import Graph, Kind, LayerSpec, TensorShape
from .stats import MeasurementRecord, ModelMetrics

FORMAT_VERSION = 1


class ModelFileError(Exception):
    pass


class MeasurementError(Exception):
    pass


def _spec_attributes(spec: LayerSpec) -> dict:
    if spec.kind == Kind.CONV:
        return {
            "out_channels": spec.out_channels,
            "kernel": list(spec.kernel),
            "stride": list(spec.stride),
            "padding": list(spec.padding),
            "groups": spec.groups,
            "has_bias": spec.has_bias,
        }
    if spec.kind == Kind.FC:
        return {"out_features": spec.out_features, "has_bias": spec.has_bias}
    if spec.kind == Kind.POOL:
        return {
            "pool_kind": spec.pool_kind,
            "kernel": list(spec.kernel),
            "stride": list(spec.stride),
            "padding": list(spec.padding),
            "ceil_mode": spec.ceil_mode,
        }
    return {}


def graph_to_dict(graph: Graph, input_shape: TensorShape) -> dict:
    graph.require_valid()
    nodes = []
    for spec in graph.nodes():
        nodes.append({
            "id": spec.id,
            "kind": spec.kind.value,
            "attributes": _spec_attributes(spec),
            "inputs": graph.predecessors(spec.id),
        })
    return {
        "format_version": FORMAT_VERSION,
        "input": {
            "channels": input_shape.channels,
            "height": input_shape.height,
            "width": input_shape.width,
        },
        "nodes": nodes,
    }


def dumps_model(graph: Graph, input_shape: TensorShape) -> str:
    return json.dumps(graph_to_dict(graph, input_shape), indent=2, sort_keys=False) + "\n"


def _spec_from_entry(entry: dict) -> LayerSpec:
    try:
        nid = entry["id"]
        kind = Kind(entry["kind"])
    except (KeyError, ValueError) as e:
        raise ModelFileError(f"bad node entry: {e}") from None
    attrs = entry.get("attributes", {})

    def pair(key, default=None):
        v = attrs.get(key, default)
        if v is None:
            return None
        if isinstance(v, int):
            return (v, v)
        return (int(v[0]), int(v[1]))

    try:
        if kind == Kind.CONV:
            return LayerSpec(
                id=nid, kind=kind,
                out_channels=int(attrs["out_channels"]),
                kernel=pair("kernel"),
                stride=pair("stride", 1),
                padding=pair("padding", 0),
                groups=int(attrs.get("groups", 1)),
                has_bias=bool(attrs.get("has_bias", False)),
            )
        if kind == Kind.FC:
            return LayerSpec(
                id=nid, kind=kind,
                out_features=int(attrs["out_features"]),
                has_bias=bool(attrs.get("has_bias", False)),
            )
        if kind == Kind.POOL:
            return LayerSpec(
                id=nid, kind=kind,
                kernel=pair("kernel"),
                stride=pair("stride", 1),
                padding=pair("padding", 0),
                pool_kind=attrs.get("pool_kind", "max"),
                ceil_mode=bool(attrs.get("ceil_mode", False)),
            )
        return LayerSpec(id=nid, kind=kind)
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFileError(f"node {nid!r}: {e}") from None


def parse_model(doc: Union[str, dict]) -> tuple[Graph, TensorShape]:
    """Parse a model document (JSON text or dict) into a validated graph."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ModelFileError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ModelFileError("model document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFileError(f"unsupported format_version {version!r}")
    try:
        inp = doc["input"]
        input_shape = TensorShape(int(inp["channels"]), int(inp["height"]), int(inp["width"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFileError(f"bad input shape: {e}") from None

    graph = Graph()
    entries = doc.get("nodes", [])
    for entry in entries:
        graph.add_node(_spec_from_entry(entry))
    for entry in entries:
        for src in entry.get("inputs", []):
            graph.connect(src, entry["id"])
    graph.require_valid()
    return graph, input_shape


def load_model(path: Union[str, Path]) -> tuple[Graph, TensorShape]:
    return parse_model(Path(path).read_text())


def save_model(path: Union[str, Path], graph: Graph, input_shape: TensorShape) -> None:
    Path(path).write_text(dumps_model(graph, input_shape))


# -- measurement CSV --------------------------------------------------------

_MEASUREMENT_FIELDS = {
    "footprint_mb": "footprint_mb",
    "inference_ms": "inference_ms",
    "energy_eff": "energy_eff_gmacs_per_joule",
    "throughput_fps": "throughput_fps",
    "gemv2t_pct": "gemv2t_pct",
    "gemv2n_pct": "gemv2n_pct",
    "gemmk1_pct": "gemmk1_pct",
}


def parse_measurements_csv(
    path: Union[str, Path],
) -> tuple[list[MeasurementRecord], Optional[list[ModelMetrics]]]:
    """Read a measurement table.

    Required column: model_id. Known optional columns: batch plus the
    measured quantities; empty cells mean "absent". If the file also carries
    macs_m / params_m / acts_m columns (as the shipped reference fixture
    does), those are returned as ModelMetrics in raw counts.
    """
    path = Path(path)
    records: list[MeasurementRecord] = []
    metrics: list[ModelMetrics] = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "model_id" not in reader.fieldnames:
            raise MeasurementError(f"{path}:1: missing required column 'model_id'")
        has_counts = {"macs_m", "params_m", "acts_m"} <= set(reader.fieldnames)
        for lineno, row in enumerate(reader, start=2):
            model_id = (row.get("model_id") or "").strip()
            if not model_id:
                raise MeasurementError(f"{path}:{lineno}: empty model_id")

            def num(col):
                raw = (row.get(col) or "").strip()
                if not raw:
                    return None
                try:
                    return float(raw)
                except ValueError:
                    raise MeasurementError(
                        f"{path}:{lineno}: column {col!r}: not a number: {raw!r}"
                    ) from None

            batch_raw = (row.get("batch") or "").strip()
            batch = None
            if batch_raw and batch_raw.lower() != "unspecified":
                try:
                    batch = int(batch_raw)
                except ValueError:
                    raise MeasurementError(
                        f"{path}:{lineno}: column 'batch': not an integer: {batch_raw!r}"
                    ) from None
            kwargs = {attr: num(col) for col, attr in _MEASUREMENT_FIELDS.items()}
            try:
                records.append(MeasurementRecord(model_id=model_id, batch=batch, **kwargs))
            except Exception as e:
                raise MeasurementError(f"{path}:{lineno}: {e}") from None
            if has_counts:
                vals = [num("params_m"), num("acts_m"), num("macs_m")]
                if None in vals:
                    raise MeasurementError(f"{path}:{lineno}: incomplete count columns")
                metrics.append(ModelMetrics(
                    model_id=model_id,
                    params=vals[0] * 1e6,
                    activations=vals[1] * 1e6,
                    macs=vals[2] * 1e6,
                ))
    return records, (metrics if metrics else None)


def fixture_path(name: str = "reference_tables.csv") -> Path:
    return Path(__file__).parent / "fixtures" / name


def load_fixture_measurements() -> tuple[list[MeasurementRecord], list[ModelMetrics]]:
    records, metrics = parse_measurements_csv(fixture_path())
    assert metrics is not None
    return records, metrics
