from __future__ import annotations

import json

import pytest

from dsieve.engine import SieveMode
from dsieve.figures import grid_figure, save_figure, wave_figure, write_report
from dsieve.trace import figure_dataset

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_grid_figure_rows(tmp_path):
    ds = figure_dataset([2, 3, 5], SieveMode.FULL, 20)
    fig = grid_figure(ds)
    ax = fig.axes[0]
    # one row per train plus the classification strip at y=0
    assert len(ax.get_yticks()) == 4
    labels = [t.get_text() for t in ax.get_yticklabels()]
    assert labels[0] == "time line"
    assert set(labels[1:]) == {"2", "3", "5"}
    path = save_figure(fig, tmp_path / "grid.png")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_wave_figure_subplot_per_prime(tmp_path):
    fig = wave_figure([3, 5, 7], SieveMode.ODD_ONLY, 25, samples_per_unit=4)
    assert len(fig.axes) == 3
    path = save_figure(fig, tmp_path / "waves.png")
    assert path.stat().st_size > 0


def test_wave_figure_full_mode_includes_two(tmp_path):
    fig = wave_figure([2, 3], SieveMode.FULL, 12, samples_per_unit=4)
    assert len(fig.axes) == 2
    save_figure(fig, tmp_path / "waves_full.png")


def test_write_report_file_set(tmp_path):
    written = write_report(tmp_path, t_max=20, samples_per_unit=4)
    names = [p.name for p in written]
    assert names == [
        "events_full.csv",
        "waves_full.csv",
        "crossing_grid_full.png",
        "waves_full.png",
        "events_odd.csv",
        "waves_odd.csv",
        "crossing_grid_odd.png",
        "waves_odd.png",
    ]
    for p in written:
        assert p.exists() and p.stat().st_size > 0
    assert (tmp_path / "events_full.csv").read_text().startswith("t,prime,event\n")
    assert (tmp_path / "waves_odd.csv").read_text().startswith("t,prime,value\n")
    for name in ("crossing_grid_full.png", "waves_odd.png"):
        assert (tmp_path / name).read_bytes()[:8] == PNG_MAGIC


def test_write_report_json_datasets(tmp_path):
    written = write_report(tmp_path, t_max=12, samples_per_unit=4, output_format="json")
    names = {p.name for p in written}
    assert "events_full.json" in names
    assert "events_odd.json" in names
    doc = json.loads((tmp_path / "events_odd.json").read_text())
    assert doc["mode"] == "odd"
    assert all(rec["prime"] % 2 == 1 for rec in doc["records"])


def test_write_report_rejects_tiny_range(tmp_path):
    with pytest.raises(ValueError):
        write_report(tmp_path, t_max=3)
