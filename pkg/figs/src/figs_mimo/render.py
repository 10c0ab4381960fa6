"""Render figure CSVs into SVG plots plus an HTML index.

Pure CSV -> image: values are plotted as-is, empty cells are skipped (never
interpolated), and nothing is recomputed. Usage:

    bottleneck-mimo-figs --input-dir out/figures --output-dir out/plots
"""

from __future__ import annotations

import argparse
import csv
import html
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .figspecs import FigureSpec, MissingColumn, preset_specs


def extract_series(spec: FigureSpec) -> tuple[dict, list[str]]:
    """Parse the CSV into {column: (x, y) float pairs} and a warning list.

    The x column must exist (MissingColumn otherwise); absent or entirely
    empty series columns are reported as warnings and skipped. At least one
    series must survive.
    """
    with open(spec.input_csv, newline="") as fh:
        rows = list(csv.DictReader(fh))
    header = rows[0].keys() if rows else []
    if spec.x_col not in header:
        raise MissingColumn(spec.x_col)
    warnings: list[str] = []
    series: dict[str, tuple[list, list]] = {}
    for col in spec.series_cols:
        if col not in header:
            warnings.append(f"{spec.figure_id}: column {col!r} absent, series skipped")
            continue
        xs, ys = [], []
        for row in rows:
            if row[col] == "" or row[spec.x_col] == "":
                continue  # missing cell: skip, never interpolate
            xs.append(float(row[spec.x_col]))
            ys.append(float(row[col]))
        if not xs:
            warnings.append(f"{spec.figure_id}: series {col!r} has no data")
            continue
        series[col] = (xs, ys)
    if not series:
        missing = next((c for c in spec.series_cols if c not in header), spec.series_cols[0])
        raise MissingColumn(missing)
    return series, warnings


def render_figure(spec: FigureSpec) -> tuple[str, list[str]]:
    """Render one figure; returns (image path, warnings)."""
    series, warnings = extract_series(spec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for col, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", markersize=3.5, linewidth=1.4, label=spec.label_for(col))
    if spec.x_log:
        ax.set_xscale("log")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title, fontsize=10)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    os.makedirs(os.path.dirname(spec.output_image) or ".", exist_ok=True)
    fig.savefig(spec.output_image)
    plt.close(fig)
    return spec.output_image, warnings


def render_all(input_dir: str, output_dir: str) -> tuple[list[str], list[str], list[str]]:
    """Render every preset; returns (images, warnings, failures).

    Per-figure failures (missing CSV, missing columns) are collected and the
    remaining figures still render; the HTML index lists whatever succeeded.
    """
    images, warnings, failures = [], [], []
    for spec in preset_specs(input_dir, output_dir):
        if not os.path.exists(spec.input_csv):
            failures.append(f"{spec.figure_id}: {spec.input_csv} not found")
            continue
        try:
            path, warns = render_figure(spec)
        except MissingColumn as exc:
            failures.append(f"{spec.figure_id}: missing column {exc.args[0]!r}")
            continue
        images.append(path)
        warnings.extend(warns)
    _write_index(output_dir, images, warnings, failures)
    return images, warnings, failures


def _write_index(output_dir: str, images, warnings, failures) -> None:
    os.makedirs(output_dir, exist_ok=True)
    lines = ["<!DOCTYPE html>", "<html><head><title>bottleneck-mimo figures</title></head><body>",
             "<h1>bottleneck-mimo figures</h1>"]
    for msg in failures:
        lines.append(f"<p><b>failed:</b> {html.escape(msg)}</p>")
    for msg in warnings:
        lines.append(f"<p><i>warning:</i> {html.escape(msg)}</p>")
    for path in images:
        name = os.path.basename(path)
        lines.append(f'<h2>{html.escape(name)}</h2><img src="{html.escape(name)}" width="760">')
    lines.append("</body></html>")
    with open(os.path.join(output_dir, "index.html"), "w") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="bottleneck-mimo-figs", description=__doc__)
    ap.add_argument("--input-dir", required=True, help="directory holding fig*.csv")
    ap.add_argument("--output-dir", required=True, help="where SVGs and index.html go")
    args = ap.parse_args(argv)
    images, warnings, failures = render_all(args.input_dir, args.output_dir)
    for msg in warnings:
        print(f"warning: {msg}", file=sys.stderr)
    for msg in failures:
        print(f"failed: {msg}", file=sys.stderr)
    print(f"rendered {len(images)} figure(s) into {args.output_dir}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
