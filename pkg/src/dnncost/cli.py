"""Command-line interface: list, analyze, compare, correlate, factorize."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from . import zoo
from .costs import Convention, CostError, factorization_compare
from .graph import GraphError, TensorShape, conv2d
from .io import (
    MeasurementError,
    ModelFileError,
    dumps_model,
    load_fixture_measurements,
    parse_measurements_csv,
)
from .report import AnalysisOptions, ModelReport, analyze, render, resolve_model
from .shapes import ShapeError
from .stats import (
    MachineSpec,
    ModelMetrics,
    StatsError,
    correlation_suite,
    footprint_to_modelsize_ratio,
)

_ERROR_CODES = [
    (ModelFileError, "parse"),
    (MeasurementError, "csv"),
    (ShapeError, "shape"),
    (CostError, "cost"),
    (StatsError, "stats"),
    (zoo.ZooError, "unknown-model"),
    (GraphError, "graph"),
    (ValueError, "invalid-argument"),
]


def _fail(exc: Exception) -> None:
    code = "error"
    for etype, name in _ERROR_CODES:
        if isinstance(exc, etype):
            code = name
            break
    message = str(exc).replace("\n", " ")
    click.echo(f"error: {code}: {message}", err=True)
    sys.exit(1)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def _parse_machine(value: Optional[str]) -> Optional[MachineSpec]:
    if value is None:
        return None
    try:
        macs, bw = value.split(":")
        return MachineSpec(float(macs), float(bw))
    except (ValueError, StatsError):
        raise ValueError(
            f"--machine must be PEAK_MACS_PER_S:PEAK_BYTES_PER_S, got {value!r}"
        ) from None


_COMMON = dict(
    batch=click.option("--batch", default=1, show_default=True, type=int),
    mode=click.option("--mode", default="inference", show_default=True,
                      type=click.Choice(["inference", "training"])),
    convention=click.option("--convention", default="all-nodes", show_default=True,
                            type=click.Choice([c.value for c in Convention])),
    bpe=click.option("--bytes-per-element", default=4, show_default=True, type=int),
    machine=click.option("--machine", default=None,
                         help="Roofline machine as PEAK_MACS_PER_S:PEAK_BYTES_PER_S."),
    output=click.option("--output", default=None, type=click.Path(dir_okay=False),
                        help="Write the report to a file instead of stdout."),
    input_size=click.option("--input-size", default=None, type=int,
                            help="Override the model's input height/width."),
)


def _options(*names):
    def wrap(fn):
        for name in reversed(names):
            fn = _COMMON[name](fn)
        return fn
    return wrap


@click.group()
def main():
    """Static cost, memory and arithmetic-intensity analysis for DNNs."""


@main.command("list")
def list_cmd():
    """List the built-in model zoo."""
    click.echo(f"{'Model':20s}  {'Family':12s}  {'Nominal input':14s}  Effective input")
    for entry in zoo.list_models():
        click.echo(
            f"{entry.model_id:20s}  {entry.family:12s}  "
            f"{entry.nominal_input_size}x{entry.nominal_input_size:<11d}  "
            f"{entry.default_input_size}x{entry.default_input_size}"
        )


def _analysis_options(batch, mode, convention, bytes_per_element, machine, input_size) -> AnalysisOptions:
    return AnalysisOptions(
        batch=batch,
        mode=mode,
        convention=Convention(convention),
        bytes_per_element=bytes_per_element,
        machine=_parse_machine(machine),
        input_size=input_size,
    )


@main.command("analyze")
@click.argument("model_ref")
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "csv", "json"]))
@_options("batch", "mode", "convention", "bpe", "machine", "output", "input_size")
@click.option("--dump-model", default=None, type=click.Path(dir_okay=False),
              help="Also write the model-file JSON for this model.")
def analyze_cmd(model_ref, fmt, batch, mode, convention, bytes_per_element,
                machine, output, input_size, dump_model):
    """Analyze one model (zoo id or model JSON file)."""
    try:
        opts = _analysis_options(batch, mode, convention, bytes_per_element,
                                 machine, input_size)
        report = analyze(model_ref, opts)
        if dump_model:
            name, graph, shape = resolve_model(model_ref, input_size)
            Path(dump_model).write_text(dumps_model(graph, shape))
        _emit(render([report.row()], fmt), output)
    except Exception as e:  # noqa: BLE001 - single CLI error boundary
        _fail(e)


@main.command("compare")
@click.argument("model_refs", nargs=-1, required=True)
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "csv", "json", "svg"]))
@click.option("--chart", default="ratios", show_default=True,
              type=click.Choice(["ratios", "energy"]),
              help="Which figure layout to draw for --format svg.")
@click.option("--measurements", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Measurement CSV joined into the chart (defaults to the shipped fixture).")
@_options("batch", "mode", "convention", "bpe", "machine", "output", "input_size")
def compare_cmd(model_refs, fmt, chart, measurements, batch, mode, convention,
                bytes_per_element, machine, output, input_size):
    """Side-by-side analysis of two or more models."""
    try:
        if len(model_refs) < 2:
            raise ValueError("compare needs at least two model references")
        opts = _analysis_options(batch, mode, convention, bytes_per_element,
                                 machine, input_size)
        reports = [analyze(ref, opts) for ref in model_refs]
        if fmt == "svg":
            if output is None:
                raise ValueError("--format svg requires --output PATH")
            _render_chart(reports, chart, measurements, bytes_per_element, output)
        else:
            _emit(render([r.row() for r in reports], fmt), output)
    except Exception as e:  # noqa: BLE001
        _fail(e)


def _render_chart(reports: list[ModelReport], chart: str,
                  measurements: Optional[str], bytes_per_element: int,
                  output: str) -> None:
    from . import charts

    if measurements is not None:
        records, _ = parse_measurements_csv(measurements)
    else:
        records, _ = load_fixture_measurements()
    by_id = {r.model_id: r for r in records}
    models = [r.model for r in reports]
    if chart == "ratios":
        app = [r.row()["acts_per_param"] for r in reports]
        fpms = []
        have_fp = all(
            by_id.get(m) is not None and by_id[m].footprint_mb is not None
            for m in models
        )
        if have_fp:
            for r in reports:
                fpms.append(footprint_to_modelsize_ratio(
                    by_id[r.model].footprint_mb,
                    r.cost.total_params,
                    bytes_per_element,
                ))
        charts.ratio_chart(models, app, fpms if have_fp else None, output)
    else:
        eff = [
            by_id[m].energy_eff_gmacs_per_joule if m in by_id else None
            for m in models
        ]
        charts.energy_chart(
            models, eff,
            [r.row()["macs_per_param"] for r in reports],
            [r.row()["macs_per_act"] for r in reports],
            output,
        )


@main.command("correlate")
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "csv", "json"]))
@click.option("--computed", is_flag=True,
              help="Correlate against zoo-computed counts even when the CSV "
                   "carries its own count columns.")
@_options("convention", "output")
def correlate_cmd(csv_path, fmt, computed, convention, output):
    """Correlate computed (or CSV-provided) metrics with measurements."""
    try:
        records, csv_metrics = parse_measurements_csv(csv_path)
        if csv_metrics is not None and not computed:
            metrics = csv_metrics
        else:
            metrics = _computed_metrics(
                [r.model_id for r in records], Convention(convention)
            )
        suite = correlation_suite(metrics, records)
        rows = [
            {
                "name": e.name,
                "r": e.r,
                "pairs": e.pairs,
                "degenerate": e.degenerate,
            }
            for e in suite.entries
        ]
        if fmt == "text":
            lines = []
            for r in rows:
                flag = "  (degenerate: two points)" if r["degenerate"] else ""
                lines.append(f"{r['name']:45s} r = {r['r']:+.2f}  n = {r['pairs']}{flag}")
            _emit("\n".join(lines) + "\n", output)
        else:
            _emit(render(rows, fmt), output)
    except Exception as e:  # noqa: BLE001
        _fail(e)


def _computed_metrics(model_ids: list[str], convention: Convention) -> list[ModelMetrics]:
    from .costs import model_cost

    metrics = []
    for mid in model_ids:
        try:
            canonical = zoo.canonical_id(mid)
        except zoo.ZooError:
            continue
        graph, shape, annotation = zoo.analyze(canonical)
        cost = model_cost(graph, annotation, convention=convention)
        metrics.append(ModelMetrics(
            model_id=mid,
            params=cost.total_params,
            activations=cost.total_activations,
            macs=cost.total_macs,
        ))
    return metrics


def _parse_conv_spec(text: str, name: str, in_channels: int, out_channels: int):
    try:
        kh, kw = text.lower().split("x")
        return conv2d(name, out_channels, (int(kh), int(kw)))
    except ValueError:
        raise ValueError(f"bad kernel spec {text!r}; expected e.g. 5x5 or 1x3") from None


@main.command("factorize")
@click.option("--original", required=True, help="Original kernel, e.g. 5x5.")
@click.option("--replacement", required=True,
              help="Comma-separated replacement chain, e.g. 3x3,3x3.")
@click.option("--in-channels", default=1, show_default=True, type=int)
@click.option("--out-channels", default=1, show_default=True, type=int)
@click.option("--input-size", default=224, show_default=True, type=int)
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "csv", "json"]))
@_options("output")
def factorize_cmd(original, replacement, in_channels, out_channels, input_size,
                  fmt, output):
    """Compare one convolution against a replacement chain of convolutions.

    Stride one and zero padding throughout; the chain must reproduce the
    original output shape. Intermediate chain stages keep out-channels."""
    try:
        orig = _parse_conv_spec(original, "original", in_channels, out_channels)
        chain = []
        parts = [p for p in replacement.split(",") if p]
        for i, part in enumerate(parts):
            cin = in_channels if i == 0 else out_channels
            chain.append(_parse_conv_spec(part, f"replacement{i}", cin, out_channels))
        shape = TensorShape(in_channels, input_size, input_size)
        delta = factorization_compare(orig, chain, shape)
        row = {
            "original": original,
            "replacement": replacement,
            "input": f"{in_channels}x{input_size}x{input_size}",
            "params_before": delta.original_params,
            "params_after": delta.replacement_params,
            "params_pct": delta.params_pct,
            "acts_before": delta.original_activations,
            "acts_after": delta.replacement_activations,
            "acts_pct": delta.activations_pct,
            "macs_before": delta.original_macs,
            "macs_after": delta.replacement_macs,
            "macs_pct": delta.macs_pct,
            "macs_per_param_pct": delta.macs_per_param_pct,
            "macs_per_act_pct": delta.macs_per_act_pct,
        }
        if fmt == "text":
            lines = [
                f"{original} -> {replacement} on {row['input']} (stride 1, pad 0)",
                f"  params {row['params_before']} -> {row['params_after']}  ({row['params_pct']:+.1f}%)",
                f"  acts   {row['acts_before']} -> {row['acts_after']}  ({row['acts_pct']:+.1f}%)",
                f"  MACs   {row['macs_before']} -> {row['macs_after']}  ({row['macs_pct']:+.1f}%)",
                f"  MACs/param {row['macs_per_param_pct']:+.2f}%   MACs/act {row['macs_per_act_pct']:+.2f}%",
            ]
            _emit("\n".join(lines) + "\n", output)
        else:
            _emit(render([row], fmt), output)
    except Exception as e:  # noqa: BLE001
        _fail(e)


if __name__ == "__main__":
    main()
