"""Dual-axis bar charts rendered with matplotlib.

Two layouts mirror the published comparison figures: activations/parameters
against footprint/model-size, and energy efficiency against the two
MACs-intensity ratios. Output is deterministic: fixed SVG hash salt, no date
metadata, and a stable group id per model so emitted SVG files are
byte-identical across runs and testable per bar group.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_SVG_KWARGS = {"metadata": {"Date": None}}


def _setup():
    plt.rcParams["svg.hashsalt"] = "dnncost"
    plt.rcParams["svg.fonttype"] = "path"


def _save(fig, out_path: Union[str, Path]) -> None:
    out_path = Path(out_path)
    kwargs = dict(_SVG_KWARGS) if out_path.suffix == ".svg" else {}
    fig.savefig(out_path, **kwargs)
    plt.close(fig)


def _grouped_bars(ax, positions, series, width, gid_prefix, labels):
    offsets = np.arange(len(series)) - (len(series) - 1) / 2
    for (name, values, color), off in zip(series, offsets):
        bars = ax.bar(positions + off * width, values, width=width,
                      label=name, color=color)
        for bar, label in zip(bars, labels):
            bar.set_gid(f"{gid_prefix}-{label}-{name}")


def ratio_chart(
    models: Sequence[str],
    acts_per_param: Sequence[float],
    footprint_per_modelsize: Optional[Sequence[float]],
    out_path: Union[str, Path],
) -> None:
    """Acts/params bars (left axis) with footprint/model-size (right axis)."""
    _setup()
    fig, ax = plt.subplots(figsize=(max(6, 0.9 * len(models)), 4.2))
    x = np.arange(len(models))
    width = 0.38 if footprint_per_modelsize is not None else 0.6
    bars = ax.bar(x - (width / 2 if footprint_per_modelsize is not None else 0),
                  acts_per_param, width=width, color="#4878cf", label="Acts/Params")
    for bar, label in zip(bars, models):
        bar.set_gid(f"ratio-{label}-acts_per_param")
    ax.set_ylabel("Activations / Parameters")
    if footprint_per_modelsize is not None:
        ax2 = ax.twinx()
        bars2 = ax2.bar(x + width / 2, footprint_per_modelsize, width=width,
                        color="#d65f5f", label="Footprint/Model size")
        for bar, label in zip(bars2, models):
            bar.set_gid(f"ratio-{label}-footprint_per_modelsize")
        ax2.set_ylabel("Memory footprint / Model size")
        handles = [bars, bars2]
        ax.legend(handles, [h.get_label() for h in handles], loc="upper left")
    ax.set_xticks(x)
    ax.set_xticklabels(models, rotation=45, ha="right", fontsize=8)
    fig.tight_layout()
    _save(fig, out_path)


def energy_chart(
    models: Sequence[str],
    energy_eff: Sequence[Optional[float]],
    macs_per_param: Sequence[float],
    macs_per_act: Sequence[float],
    out_path: Union[str, Path],
) -> None:
    """Energy efficiency bars (left axis) with the two MAC-intensity ratios
    (right axis)."""
    _setup()
    fig, ax = plt.subplots(figsize=(max(6, 0.9 * len(models)), 4.2))
    x = np.arange(len(models))
    width = 0.26
    eff = [0.0 if v is None else v for v in energy_eff]
    bars = ax.bar(x - width, eff, width=width, color="#6acc65",
                  label="Energy efficiency (GMACs/J)")
    for bar, label in zip(bars, models):
        bar.set_gid(f"energy-{label}-energy_eff")
    ax.set_ylabel("Energy efficiency (GMACs/Joule)")
    ax2 = ax.twinx()
    _grouped_bars(
        ax2, x + width / 2,
        [("macs_per_param", macs_per_param, "#4878cf"),
         ("macs_per_act", macs_per_act, "#d65f5f")],
        width, "energy", models,
    )
    ax2.set_ylabel("MACs/Params and MACs/Acts")
    ax.set_xticks(x)
    ax.set_xticklabels(models, rotation=45, ha="right", fontsize=8)
    handles, labels_ = ax.get_legend_handles_labels()
    h2, l2 = ax2.get_legend_handles_labels()
    ax.legend(handles + h2, labels_ + l2, loc="upper right", fontsize=8)
    fig.tight_layout()
    _save(fig, out_path)
