"""Render benchmark measurements as one figure per operation."""
from __future__ import annotations

import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import OPERATIONS, REPRESENTATIONS, Measurement  # noqa: E402

TITLES = {
    "insert": "Bulk insert",
    "seq_scan": "Sequential scan, 1.0 km to 1.2 km",
    "index_create": "Index build",
    "index_size": "Index size",
    "eq_scan": "Index equality probe, 1.2 km",
    "range_scan": "Index range scan, 1.0 km to 1.2 km",
}
STYLE = {"packed": dict(marker="o", color="C0"), "decomposed": dict(marker="s", color="C1")}


def _series(measurements: list[Measurement], op: str):
    out = defaultdict(list)
    for m in measurements:
        if m.operation != op:
            continue
        y = m.index_bytes if op == "index_size" else m.median_ns
        if y is not None:
            out[m.representation].append((m.n, y))
    return {rep: sorted(points) for rep, points in out.items()}


def plot_operation(measurements: list[Measurement], op: str, path: str) -> str:
    fig, ax = plt.subplots(figsize=(5, 3.6))
    series = _series(measurements, op)
    for rep in REPRESENTATIONS:
        if rep not in series:
            continue
        xs, ys = zip(*series[rep])
        if op != "index_size":
            ys = [y / 1e6 for y in ys]
        ax.plot(xs, ys, label=rep, **STYLE[rep])
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("rows")
    ax.set_ylabel("bytes" if op == "index_size" else "median time (ms)")
    ax.set_title(TITLES[op])
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_all(measurements: list[Measurement], outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    return [plot_operation(measurements, op, os.path.join(outdir, f"{op}.png"))
            for op in OPERATIONS]
