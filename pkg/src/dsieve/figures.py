"""Render crossing grids and waveforms to image files.

Companion to :mod:`dsieve.trace`: the trace functions emit data, these
draw it.  Everything renders through the Agg backend so reports work
headless, and each writer returns the paths it produced.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .engine import SieveMode, run_to
from .trace import FigureDataset, render_wave

FIG_WIDTH = 9.0
ROW_HEIGHT = 0.42
DPI = 150

_STYLE = {
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.25,
    "grid.linewidth": 0.5,
    "font.size": 9,
}


def grid_figure(dataset: FigureDataset):
    """Crossing grid: one row per prime train, marks at crossed times.

    The bottom strip classifies each time from a real engine run of the
    same mode, so the picture shows decoding and encoding together.
    """
    t_max = dataset.t_max
    primes = [rec.prime for rec in dataset.records]
    ledger = run_to(dataset.mode, t_max)
    with plt.rc_context(_STYLE):
        height = 1.4 + ROW_HEIGHT * (len(primes) + 1)
        fig = plt.figure(figsize=(FIG_WIDTH, height))
        ax = fig.add_subplot(111)
        for row, rec in enumerate(dataset.records):
            y = len(primes) - row
            ax.axhline(y, color="0.85", lw=0.6, zorder=1)
            ax.plot([rec.prime], [y], "o", color="tab:blue", ms=5, zorder=3)
            if rec.crossing_times:
                ax.plot(rec.crossing_times, [y] * len(rec.crossing_times),
                        "x", color="tab:red", ms=5, zorder=3)
            if rec.extremum_times:
                ax.plot(rec.extremum_times, [y] * len(rec.extremum_times),
                        "^", color="tab:green", ms=4, zorder=3)
        decoded = set(ledger.decoded_primes())
        untouched = set(ledger.untouched())
        for t in range(1, t_max + 1):
            if t in decoded:
                color = "tab:blue"
            elif t in untouched or t == 1:
                color = "0.7"
            else:
                color = "tab:red"
            ax.plot([t], [0], "s", color=color, ms=4, zorder=3)
        ax.set_yticks([0] + list(range(1, len(primes) + 1)))
        ax.set_yticklabels(["time line"] + [str(p) for p in reversed(primes)])
        ax.set_xlim(0.5, t_max + 0.5)
        ax.set_xlabel("time")
        ax.set_ylabel("train of p")
        ax.set_title(f"crossing grid, {dataset.mode.value} mode, t <= {t_max}")
        fig.tight_layout()
    return fig


def wave_figure(primes, mode: SieveMode | str, t_max: int, samples_per_unit: int = 16):
    """Stacked sin^2 waveforms with crossing and extremum markers."""
    mode = SieveMode(mode)
    primes = sorted(set(primes))
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=(FIG_WIDTH, 1.2 + 1.1 * len(primes)))
        for row, p in enumerate(primes):
            ax = fig.add_subplot(len(primes), 1, row + 1)
            samples = render_wave(p, mode, t_max, samples_per_unit)
            ax.plot([s.t for s in samples], [s.value for s in samples],
                    color="tab:blue", lw=1.0)
            zeros = [s.t for s in samples if s.value == 0.0 and float(s.t).is_integer()]
            ax.plot(zeros, [0.0] * len(zeros), "x", color="tab:red", ms=5)
            if mode is SieveMode.ODD_ONLY:
                peaks = [s.t for s in samples
                         if s.value == 1.0 and float(s.t).is_integer() and int(s.t) % (2 * p) == 0]
                ax.plot(peaks, [1.0] * len(peaks), "^", color="tab:green", ms=5)
            ax.set_xlim(0, t_max + 0.5)
            ax.set_ylim(-0.08, 1.15)
            ax.set_ylabel(f"p={p}")
            if row < len(primes) - 1:
                ax.set_xticklabels([])
        ax.set_xlabel("time")
        fig.suptitle(f"train waveforms, {mode.value} mode", y=0.995)
        fig.tight_layout()
    return fig


def save_figure(fig, path, dpi: int = DPI) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path


def _wave_defaults(primes: list[int], mode: SieveMode) -> list[int]:
    usable = [p for p in primes if not (mode is not SieveMode.FULL and p == 2)]
    return usable[:5]


def write_report(out_dir, t_max: int, samples_per_unit: int = 16,
                 output_format: str = "csv", dpi: int = DPI) -> list[Path]:
    """Write grid/wave figures plus their datasets under ``out_dir``.

    Produces, for full and odd modes over all primes <= t_max: the
    event dataset (CSV or JSON), the sampled waveforms of the first few
    trains (CSV), and PNG renderings of both.  Returns written paths in
    a deterministic order.
    """
    from .oracle import build
    from .trace import figure_dataset, wave_csv

    if t_max < 4:
        raise ValueError("t_max must be >= 4")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    primes = build(t_max).primes()
    ext = "json" if output_format == "json" else "csv"
    written: list[Path] = []
    for mode in (SieveMode.FULL, SieveMode.ODD_ONLY):
        mode_primes = primes if mode is SieveMode.FULL else [p for p in primes if p > 2]
        tag = "full" if mode is SieveMode.FULL else "odd"
        dataset = figure_dataset(mode_primes, mode, t_max)
        data_path = out / f"events_{tag}.{ext}"
        payload = dataset.to_json() + "\n" if ext == "json" else dataset.to_csv()
        data_path.write_text(payload)
        written.append(data_path)
        wave_primes = _wave_defaults(mode_primes, mode)
        wave_path = out / f"waves_{tag}.csv"
        wave_path.write_text(wave_csv(wave_primes, mode, t_max, samples_per_unit))
        written.append(wave_path)
        written.append(save_figure(grid_figure(dataset), out / f"crossing_grid_{tag}.png", dpi))
        written.append(save_figure(
            wave_figure(wave_primes, mode, t_max, samples_per_unit),
            out / f"waves_{tag}.png", dpi))
    return written
