"""Tests for the command-line interface: exit codes and CSV output."""

import pytest

from dgfilter.cli import _parse_n_list, main
from dgfilter.experiments import CSV_HEADER


class TestNListParsing:
    def test_range_form(self):
        assert _parse_n_list("7:64:2") == list(range(7, 64, 2))

    def test_comma_form(self):
        assert _parse_n_list("7,15,23") == [7, 15, 23]

    def test_two_part_range(self):
        assert _parse_n_list("3:6") == [3, 4, 5]


class TestExitCodes:
    def test_ops_check_passes(self, capsys):
        assert main(["ops", "check", "--n", "16"]) == 0
        assert "SBP residual" in capsys.readouterr().out

    def test_filter_verify_passes(self, capsys):
        assert main(["filter", "verify", "--n", "12"]) == 0
        out = capsys.readouterr().out
        assert "gram last diagonal" in out and "ok" in out

    def test_filter_verify_no_clip_passes(self):
        # without clipping the last coefficient is exp(-36), far below the
        # spectral gap, so the check still comes out clean
        assert main(["filter", "verify", "--n", "12", "--no-clip"]) == 0

    def test_usage_error_is_exit_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["burgers", "--variant", "nonsense", "--out", "x.csv"])
        assert exc.value.code == 2

    def test_missing_subcommand_is_exit_two(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestCsvOutputs:
    def test_convergence_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "conv.csv"
        assert main(["convergence", "--n-list", "7,9", "--dt", "0.005",
                     "--out", str(out)]) == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith(CSV_HEADER)
        assert text.count("\n") == 3
        assert "\r" not in text

    def test_varspeed_writes_csv(self, tmp_path):
        out = tmp_path / "var.csv"
        assert main(["varspeed", "--n", "16", "--dt", "0.005", "--out", str(out)]) == 0
        assert "total_variation" in out.read_text(encoding="utf-8")

    def test_burgers_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "burgers.csv"
        assert main(["burgers", "--variant", "skew_filtered", "--n", "24",
                     "--out", str(out)]) == 0
        assert "energy" in out.read_text(encoding="utf-8")

    def test_fv_reference_writes_csv(self, tmp_path):
        out = tmp_path / "fv.csv"
        assert main(["fv-reference", "--cells", "100", "--out", str(out)]) == 0
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert len(lines) == 101

    def test_identical_invocations_identical_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["convergence", "--n-list", "7,9", "--dt", "0.005", "--out", str(a)])
        main(["convergence", "--n-list", "7,9", "--dt", "0.005", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
