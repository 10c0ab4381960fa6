"""Figure specifications: which CSV, which columns, which axes."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


class MissingColumn(KeyError):
    """A required column is absent from the CSV header."""


# legend labels for the series columns the rate studies emit
SERIES_LABELS = {
    "capacity": "capacity",
    "ub": "R^ub",
    "ndt": "R^lb1",
    "qci": "R^lb2",
    "qci_b1": "R^lb2 (B=1)",
    "qci_b2": "R^lb2 (B=2)",
    "qci_b4": "R^lb2 (B=4)",
    "tci": "R^lb3",
    "mmse": "R^lb4",
    "h_joint": "H_joint",
    "h_sum": "H_sum",
}


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: CSV in, image out."""

    figure_id: str
    input_csv: str
    x_col: str
    series_cols: tuple
    x_label: str
    y_label: str
    output_image: str
    x_log: bool = False
    series_labels: dict = field(default_factory=dict)
    title: str = ""

    def label_for(self, col: str) -> str:
        return self.series_labels.get(col) or SERIES_LABELS.get(col, col)


RATE_SERIES = ("capacity", "ub", "ndt", "tci", "mmse", "qci_b2")
RATE_SERIES_MULTI_B = ("capacity", "ub", "ndt", "tci", "mmse", "qci_b1", "qci_b2", "qci_b4")
Y_RATE = "rate [bits/complex dim]"


def preset_specs(input_dir: str, output_dir: str) -> list[FigureSpec]:
    """The twelve preset studies, wired to fig02.csv ... fig15.csv."""

    def spec(fid, x_col, series, x_label, y_label=Y_RATE, x_log=False, labels=None, title=""):
        return FigureSpec(
            figure_id=fid,
            input_csv=os.path.join(input_dir, f"{fid}.csv"),
            x_col=x_col,
            series_cols=tuple(series),
            x_label=x_label,
            y_label=y_label,
            output_image=os.path.join(output_dir, f"{fid}.svg"),
            x_log=x_log,
            series_labels=labels or {},
            title=title,
        )

    return [
        spec("fig02", "D", ("ndt_rho0db", "ndt_rho10db", "ndt_rho20db"),
             "distortion D", x_log=True,
             labels={"ndt_rho0db": "R^lb1 (0 dB)", "ndt_rho10db": "R^lb1 (10 dB)",
                     "ndt_rho20db": "R^lb1 (20 dB)"},
             title="quantize-and-forward rate vs channel distortion"),
        spec("fig05", "lambda_th", ("tci_k2m2", "tci_k4m4"),
             "truncation threshold", x_log=True,
             labels={"tci_k2m2": "R^lb3 (K=M=2)", "tci_k4m4": "R^lb3 (K=M=4)"},
             title="truncated inversion vs threshold, square channels"),
        spec("fig06", "lambda_th", ("tci_k4m6", "tci_k4m8"),
             "truncation threshold", x_log=True,
             labels={"tci_k4m6": "R^lb3 (K=4, M=6)", "tci_k4m8": "R^lb3 (K=4, M=8)"},
             title="truncated inversion vs threshold, tall channels"),
        spec("fig07", "rho_db", RATE_SERIES, "SNR [dB]",
             title="bounds vs SNR, K=M=2, C=40"),
        spec("fig08", "rho_db", RATE_SERIES, "SNR [dB]",
             title="bounds vs SNR, K=M=4, C=40"),
        spec("fig09", "c_bits", RATE_SERIES_MULTI_B, "link capacity C [bits]",
             title="bounds vs C, K=M=2, 40 dB"),
        spec("fig10", "c_bits", RATE_SERIES_MULTI_B, "link capacity C [bits]",
             title="bounds vs C, K=M=4, 40 dB"),
        spec("fig11", "m", RATE_SERIES, "antennas M",
             title="bounds vs M, K=2, 10 dB, C=40"),
        spec("fig12", "m", RATE_SERIES, "antennas M",
             title="bounds vs M, K=2, 40 dB, C=40"),
        spec("fig13", "m", ("h_joint", "h_sum"), "antennas M",
             y_label="entropy [bits]",
             title="joint vs per-entry entropy of quantized noise levels, K=2, B=2"),
        spec("fig14", "k", RATE_SERIES_MULTI_B, "K = M",
             title="bounds vs channel dimension, C=50, 40 dB"),
        spec("fig15", "k", RATE_SERIES_MULTI_B, "K = M",
             title="bounds vs channel dimension, C=8K, 40 dB"),
    ]
