"""Tests for the CSV-to-plot renderer, on synthetic CSVs."""

import csv
import os

import pytest

from figs_mimo import MissingColumn, extract_series, preset_specs, render_all, render_figure
from figs_mimo.render import main


def write_synthetic_csvs(directory, only=None):
    """Write small CSVs matching every preset's expected columns."""
    os.makedirs(directory, exist_ok=True)
    for spec in preset_specs(directory, directory):
        if only is not None and spec.figure_id not in only:
            continue
        header = [spec.x_col, *spec.series_cols]
        with open(spec.input_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for i in range(1, 5):
                w.writerow([i] + [f"{0.5 * i + j:.3f}" for j in range(len(spec.series_cols))])


def test_render_all_full_directory(tmp_path):
    src = tmp_path / "csv"
    dst = tmp_path / "img"
    write_synthetic_csvs(str(src))
    images, warnings, failures = render_all(str(src), str(dst))
    assert len(images) == 12
    assert failures == []
    assert (dst / "index.html").exists()
    for img in images:
        assert img.endswith(".svg") and os.path.getsize(img) > 0
    index = (dst / "index.html").read_text()
    assert index.count("<img") == 12


def test_cli_exit_zero_on_full_directory(tmp_path, capsys):
    src, dst = tmp_path / "csv", tmp_path / "img"
    write_synthetic_csvs(str(src))
    assert main(["--input-dir", str(src), "--output-dir", str(dst)]) == 0
    assert "rendered 12 figure(s)" in capsys.readouterr().out


def test_column_rename_raises_missing_column(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    write_synthetic_csvs(str(src))
    # rename the x column of one figure
    path = src / "fig07.csv"
    text = path.read_text().replace("rho_db", "snr_db", 1)
    path.write_text(text)
    spec = next(s for s in preset_specs(str(src), str(dst)) if s.figure_id == "fig07")
    with pytest.raises(MissingColumn) as exc:
        render_figure(spec)
    assert exc.value.args[0] == "rho_db"
    images, _, failures = render_all(str(src), str(dst))
    assert len(images) == 11
    assert any("fig07" in f and "rho_db" in f for f in failures)
    assert main(["--input-dir", str(src), "--output-dir", str(dst)]) == 1


def test_single_series_plot_with_warnings(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    os.makedirs(src)
    with open(src / "fig07.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rho_db", "ub"])
        w.writerows([[0, 1.0], [10, 2.0]])
    spec = next(s for s in preset_specs(str(src), str(dst)) if s.figure_id == "fig07")
    path, warnings = render_figure(spec)
    assert os.path.exists(path)
    # every other series is reported missing
    assert len(warnings) == len(spec.series_cols) - 1


def test_missing_cells_skipped_not_interpolated(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    os.makedirs(src)
    with open(src / "fig07.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rho_db", "ub", "ndt"])
        w.writerows([[0, 1.0, ""], [10, "", 2.5], [20, 3.0, 3.5]])
    spec = next(s for s in preset_specs(str(src), str(dst)) if s.figure_id == "fig07")
    series, warnings = extract_series(spec)
    assert series["ub"] == ([0.0, 20.0], [1.0, 3.0])
    assert series["ndt"] == ([10.0, 20.0], [2.5, 3.5])


def test_extraction_is_pure(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    write_synthetic_csvs(str(src), only={"fig13"})
    spec = next(s for s in preset_specs(str(src), str(dst)) if s.figure_id == "fig13")
    first, _ = extract_series(spec)
    render_figure(spec)
    second, _ = extract_series(spec)
    assert first == second


def test_partial_directory_renders_subset_nonzero_exit(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    write_synthetic_csvs(str(src), only={"fig02", "fig13"})
    images, _, failures = render_all(str(src), str(dst))
    assert len(images) == 2
    assert len(failures) == 10
    assert main(["--input-dir", str(src), "--output-dir", str(dst)]) == 1


def test_empty_directory_nonzero_no_images(tmp_path):
    src, dst = tmp_path / "csv", tmp_path / "img"
    os.makedirs(src)
    images, _, failures = render_all(str(src), str(dst))
    assert images == []
    assert len(failures) == 12
    assert main(["--input-dir", str(src), "--output-dir", str(dst)]) == 1
