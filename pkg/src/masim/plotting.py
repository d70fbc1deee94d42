"""Render summary figures next to the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import ResultTable

_AXIS_LABELS = {
    "points": "number of sampling points",
    "region_length": "region length (m)",
    "paths": "number of transmit paths",
}
_UNIT_LABELS = {
    "snr_linear": "received SNR (linear)",
    "bits_per_s_per_hz": "sum rate (bits/s/Hz)",
}
_MARKERS = {"proposed": "o", "su": "s", "pso": "^", "fpa": "v", "brute_force": "*"}


def render_summary(table: ResultTable, out_base, title: str = "") -> str:
    """Plot mean utility (with a std band) per method over the sweep and
    save it as <base>.summary.png."""
    summary = table.summary()
    if not summary:
        raise ValueError("nothing to plot")
    sweep_var = summary[0].sweep_var
    units = table.runs[0].utility_units

    by_method: dict[str, list] = {}
    for row in summary:
        by_method.setdefault(row.method, []).append(row)

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for method, rows in by_method.items():
        x = [r.sweep_value for r in rows]
        mean = [r.mean_utility for r in rows]
        std = [r.std_utility for r in rows]
        ax.plot(x, mean, marker=_MARKERS.get(method, "."), label=method)
        ax.fill_between(x, [m - s for m, s in zip(mean, std)],
                        [m + s for m, s in zip(mean, std)], alpha=0.15)
    ax.set_xlabel(_AXIS_LABELS.get(sweep_var, sweep_var))
    ax.set_ylabel(_UNIT_LABELS.get(units, units))
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    out_path = str(out_base) + ".summary.png"
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
