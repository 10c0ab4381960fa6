"""Rendering of the bottleneck-mimo figure CSVs into plot files."""

from .figspecs import FigureSpec, MissingColumn, preset_specs
from .render import extract_series, render_all, render_figure
