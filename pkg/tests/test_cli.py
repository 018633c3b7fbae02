import numpy as np
import pytest

from nhvqe.cli import main
from nhvqe.sweep import CSV_HEADER, read_csv


class TestExactCommand:
    def test_prints_ground_observables(self, capsys):
        assert main(["exact", "--n", "3", "--gamma", "0.5"]) == 0
        out = capsys.readouterr().out
        assert "ground value" in out and "mx" in out and "chi_x" in out

    def test_biorthogonal_flag(self, capsys):
        assert main(["exact", "--model", "nh-tim", "--n", "3", "--gamma", "0.5",
                     "--biorthogonal"]) == 0
        assert "biorth" in capsys.readouterr().out

    def test_missing_n_is_validation_error(self, capsys):
        assert main(["exact", "--gamma", "0.5"]) == 1

    def test_multiple_n_rejected(self):
        assert main(["exact", "--n", "2,3", "--gamma", "0.5"]) == 1


class TestSolveCommand:
    def test_solves_and_dumps_history(self, tmp_path, capsys):
        history = tmp_path / "hist.txt"
        code = main([
            "solve", "--n", "2", "--gamma", "1.0", "--epsilon", "0",
            "--restarts", "1", "--seed", "3", "--history-out", str(history),
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "energy" in out and "final_cost" in out
        costs = [float(line) for line in history.read_text().splitlines()]
        assert len(costs) > 10
        assert costs[-1] < costs[0]


class TestSweepCommand:
    def test_exact_sweep_to_csv_with_plots(self, tmp_path, capsys):
        out_csv = tmp_path / "sweep.csv"
        code = main([
            "sweep", "--model", "tim", "--n", "3,4", "--method", "exact",
            "--gamma-start", "0.2", "--gamma-end", "1.8", "--steps", "5",
            "--out", str(out_csv), "--plot",
        ])
        assert code == 0
        result = read_csv(out_csv)
        assert len(result) == 10
        for quantity in ("mx", "chi_x"):
            svg = tmp_path / f"sweep.csv.{quantity}.svg"
            assert svg.exists()
            assert "<svg" in svg.read_text(encoding="utf-8")

    def test_stdout_when_no_out(self, capsys):
        code = main([
            "sweep", "--n", "2", "--method", "exact",
            "--gamma-start", "0.5", "--gamma-end", "1.5", "--steps", "2",
        ])
        assert code == 0
        assert CSV_HEADER in capsys.readouterr().out

    def test_plot_without_out_fails(self, capsys):
        code = main([
            "sweep", "--n", "2", "--method", "exact",
            "--gamma-start", "0.5", "--gamma-end", "1.5", "--steps", "2", "--plot",
        ])
        assert code == 1

    def test_invalid_grid_fails_before_work(self):
        assert main(["sweep", "--n", "2", "--steps", "1"]) == 1
        assert main(["sweep", "--n", "40", "--method", "exact"]) == 1

    def test_unknown_flag_is_validation_error(self):
        assert main(["sweep", "--frobnicate"]) == 1


class TestConfigFile:
    def test_file_supplies_values_and_flags_override(self, tmp_path, capsys):
        config = tmp_path / "run.conf"
        config.write_text(
            "# reproduction recipe\n"
            "model = tim\n"
            "n_list = 2,3\n"          # sweep-config field names work
            "method = exact\n"
            "gamma-start = 0.4\n"     # so do flag spellings
            "gamma_end = 1.6\n"
            "gamma_steps = 4\n",
            encoding="utf-8",
        )
        out_csv = tmp_path / "out.csv"
        code = main(["sweep", "--config", str(config), "--steps", "3",
                     "--out", str(out_csv)])
        assert code == 0
        result = read_csv(out_csv)
        assert len(result) == 6  # 3 steps from the flag, 2 chain sizes
        assert {r.n for r in result.rows} == {2, 3}

    def test_unknown_key_rejected(self, tmp_path):
        config = tmp_path / "bad.conf"
        config.write_text("solver = bogus\n", encoding="utf-8")
        assert main(["sweep", "--config", str(config), "--n", "2"]) == 1

    def test_malformed_line_rejected(self, tmp_path):
        config = tmp_path / "bad.conf"
        config.write_text("just some words\n", encoding="utf-8")
        assert main(["sweep", "--config", str(config), "--n", "2"]) == 1

    def test_missing_file_errors(self):
        assert main(["sweep", "--config", "/nonexistent/run.conf", "--n", "2"]) == 1


class TestCompareCommand:
    def test_self_agreement_passes(self, capsys, tmp_path, monkeypatch):
        # compare on a tiny noise-free grid: methods agree, exit 0
        code = main([
            "compare", "--n", "2", "--gamma-start", "0.9", "--gamma-end", "1.8",
            "--steps", "2", "--epsilon", "0", "--restarts", "2", "--seed", "1",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "OK" in out

    def test_threshold_failure_exits_two(self, capsys):
        # an absurd bound forces the threshold path
        code = main([
            "compare", "--n", "2", "--gamma-start", "0.9", "--gamma-end", "1.8",
            "--steps", "2", "--epsilon", "0", "--restarts", "1", "--seed", "1",
            "--bound", "1e-18",
        ])
        assert code == 2
        assert "FAIL" in capsys.readouterr().out


class TestDeterminism:
    def test_sweep_csv_byte_identical_across_runs_and_workers(self, tmp_path):
        digests = []
        for i, workers in enumerate((1, 4, 1)):
            out_csv = tmp_path / f"d{i}.csv"
            code = main([
                "sweep", "--model", "nh-tim", "--n", "2,3", "--method", "exact",
                "--gamma-start", "0.0", "--gamma-end", "2.0", "--steps", "5",
                "--seed", "7", "--workers", str(workers), "--out", str(out_csv),
            ])
            assert code == 0
            digests.append(out_csv.read_bytes())
        assert digests[0] == digests[1] == digests[2]
