"""Tests for the command-line front end: record formats, exit codes,
sweep determinism, and the validation suite plumbing."""

import csv
import json
import os

from bottleneck_mimo.cli import CSV_COLUMNS, FIGURE_PRESETS, main


def run(argv):
    return main(argv)


class TestBoundCommand:
    def test_smoke_csv_record(self, tmp_path, capsys):
        out = tmp_path / "one.csv"
        code = run(["bound", "--scheme", "ub", "--k", "2", "--m", "2",
                    "--snr-db", "10", "--c", "40", "--output", str(out)])
        assert code == 0
        rows = list(csv.reader(out.read_text().splitlines()))
        assert rows[0] == CSV_COLUMNS
        assert len(rows) == 2
        rec = dict(zip(CSV_COLUMNS, rows[1]))
        assert rec["scheme"] == "ub"
        assert 0.0 < float(rec["value_bits"]) <= 40.0
        assert rec["method"] == "quadrature"

    def test_qci_wide_channel_exits_2(self, capsys):
        code = run(["bound", "--scheme", "qci", "--k", "4", "--m", "2",
                    "--snr-db", "10", "--c", "40"])
        assert code == 2
        assert "K <= M" in capsys.readouterr().err

    def test_tci_divergent_exits_2(self, capsys):
        code = run(["bound", "--scheme", "tci", "--k", "2", "--m", "2",
                    "--snr-db", "10", "--c", "40", "--lambda-th", "0"])
        assert code == 2
        assert "does not exist" in capsys.readouterr().err

    def test_option_scheme_consistency(self, capsys):
        code = run(["bound", "--scheme", "ub", "--k", "2", "--m", "2",
                    "--snr-db", "10", "--c", "40", "--b", "2"])
        assert code == 2

    def test_json_format_stable_keys(self, tmp_path):
        out = tmp_path / "one.json"
        code = run(["bound", "--scheme", "mmse", "--k", "2", "--m", "4",
                    "--snr-db", "10", "--c", "12", "--format", "json",
                    "--output", str(out)])
        assert code == 0
        records = json.loads(out.read_text())
        assert list(records[0].keys()) == sorted(records[0].keys())


class TestSweepCommand:
    ARGS = ["sweep", "--axis", "rho_db", "--values", "0,10", "--k", "2", "--m", "2",
            "--c", "16", "--schemes", "ub,tci,capacity", "--samples", "2000",
            "--seed", "5"]

    def test_fixed_seed_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(self.ARGS + ["--output", str(a)]) == 0
        assert run(self.ARGS + ["--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert b"\r" not in a.read_bytes()  # LF endings

    def test_row_per_value_and_scheme(self, tmp_path):
        out = tmp_path / "s.csv"
        run(self.ARGS + ["--output", str(out)])
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert len(rows) == 2 * 3
        assert [r["scheme"] for r in rows[:3]] == ["ub", "tci", "capacity"]

    def test_csv_floats_round_trip(self, tmp_path):
        out = tmp_path / "s.csv"
        run(self.ARGS + ["--output", str(out)])
        rows = list(csv.DictReader(out.read_text().splitlines()))
        for r in rows:
            v = float(r["value_bits"])
            assert format(v, ".17g") == r["value_bits"]

    def test_c_per_k_coupling(self, tmp_path):
        out = tmp_path / "c.csv"
        code = run(["sweep", "--axis", "K_equals_M", "--values", "1,2,4",
                    "--snr-db", "10", "--c-per-k", "8", "--schemes", "ub",
                    "--output", str(out)])
        assert code == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert [float(r["C_bits"]) for r in rows] == [8.0, 16.0, 32.0]

    def test_failed_cell_recorded_not_fatal(self, tmp_path):
        out = tmp_path / "e.csv"
        code = run(["sweep", "--axis", "C", "--values", "1,16", "--k", "2", "--m", "4",
                    "--snr-db", "10", "--schemes", "qci", "--b", "2",
                    "--output", str(out)])
        assert code == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert rows[0]["error"] != "" and rows[0]["value_bits"] == ""
        assert rows[1]["error"] == "" and float(rows[1]["value_bits"]) > 0

    def test_empty_values_exit_2(self):
        assert run(["sweep", "--axis", "C", "--values", "", "--schemes", "ub"]) == 2

    def test_unsorted_values_exit_2(self):
        assert run(["sweep", "--axis", "C", "--values", "16,8", "--schemes", "ub"]) == 2


class TestFiguresCommand:
    def test_presets_cover_the_study_set(self):
        assert sorted(FIGURE_PRESETS) == [
            "fig02", "fig05", "fig06", "fig07", "fig08", "fig09", "fig10",
            "fig11", "fig12", "fig13", "fig14", "fig15",
        ]

    def test_single_preset_written(self, tmp_path):
        code = run(["figures", "--output-dir", str(tmp_path), "--only", "fig02",
                    "--samples", "1000"])
        assert code == 0
        rows = list(csv.DictReader((tmp_path / "fig02.csv").read_text().splitlines()))
        assert "D" in rows[0]
        assert "ndt_rho10db" in rows[0]
        assert len(rows) == 40

    def test_unknown_preset_exit_2(self, tmp_path):
        assert run(["figures", "--output-dir", str(tmp_path), "--only", "nope"]) == 2


class TestThreadedSweep:
    def test_worker_pool_matches_serial_output(self, tmp_path):
        args = ["sweep", "--axis", "C", "--values", "8,16", "--k", "2", "--m", "2",
                "--snr-db", "10", "--schemes", "ub,tci", "--samples", "2000",
                "--seed", "9"]
        serial, pooled = tmp_path / "serial.csv", tmp_path / "pooled.csv"
        old = os.environ.pop("BOTTLENECK_MIMO_THREADS", None)
        try:
            assert run(args + ["--output", str(serial)]) == 0
            os.environ["BOTTLENECK_MIMO_THREADS"] = "4"
            assert run(args + ["--output", str(pooled)]) == 0
        finally:
            if old is None:
                os.environ.pop("BOTTLENECK_MIMO_THREADS", None)
            else:
                os.environ["BOTTLENECK_MIMO_THREADS"] = old
        assert serial.read_bytes() == pooled.read_bytes()


class TestValidateCommand:
    def test_quick_suite_passes(self, tmp_path):
        import time

        out = tmp_path / "report.json"
        t0 = time.time()
        code = run(["validate", "--quick", "--samples", "5000", "--seed", "3",
                    "--output", str(out)])
        elapsed = time.time() - t0
        report = json.loads(out.read_text())
        assert code == 0
        assert report["all_passed"] is True
        assert elapsed < 60.0  # the quick suite's runtime budget
        names = {c["name"] for c in report["checks"]}
        assert {"density_normalization_and_mean", "dominance_grid",
                "determinism_replay", "tci_jensen_sandwich"} <= names

    def test_absurd_tolerance_fails(self, tmp_path):
        out = tmp_path / "report.json"
        code = run(["validate", "--quick", "--samples", "5000", "--seed", "3",
                    "--rel-tol", "1e-30", "--abs-tol", "1e-30",
                    "--output", str(out)])
        assert code == 1
        report = json.loads(out.read_text())
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        assert "quadrature_selftest" in failed
