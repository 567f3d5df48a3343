"""CLI tests: exit codes, artifact formats, determinism, and the named
verification bundles."""

import json

import pytest

from flexiplex.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFICATION, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFamilyCommand:
    def test_n4_descriptor(self, capsys):
        code, out, _ = run_cli(
            capsys, "family", "--kind", "n4", "--a", "1,1,-2", "--b", "2,-3,1"
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["kind"] == "n4"
        assert payload["excluded_t_sq"] is None
        assert payload["A"][0][0] == "1"

    def test_degenerate_parameters_exit_2_with_exclusion_named(self, capsys):
        code, _, err = run_cli(
            capsys, "family", "--kind", "n4", "--a", "1,1,-2", "--b", "1,-2,1"
        )
        assert code == EXIT_CONFIG
        assert "face (0, 2, 3)" in err

    def test_matrix_family(self, capsys):
        code, out, _ = run_cli(capsys, "family", "--kind", "odd", "--n", "5")
        assert code == EXIT_OK
        assert json.loads(out)["order"] == 6

    def test_parity_mismatch(self, capsys):
        code, _, err = run_cli(capsys, "family", "--kind", "odd", "--n", "6")
        assert code == EXIT_CONFIG


class TestSweepCommand:
    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--family", "n4", "--a", "1,1,-2", "--b", "2,-3,1"
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        header = lines[0].split(",")
        assert header[:2] == ["t", "det"]
        # constant 2-minor columns, varying det column
        minor_idx = header.index("minor_0_1")
        dets = {line.split(",")[1] for line in lines[1:]}
        minors = {line.split(",")[minor_idx] for line in lines[1:]}
        assert len(dets) > 1
        assert len(minors) == 1

    def test_json_output_deterministic(self, capsys):
        args = (
            "sweep", "--family", "n5", "--a", "1,1,-2", "--b", "2,-3,1",
            "--format", "json",
        )
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == EXIT_OK
        assert out1 == out2
        assert json.loads(out1)["verdicts"]["minors_constant"] is True

    def test_bad_grid(self, capsys):
        code, _, err = run_cli(
            capsys,
            "sweep", "--family", "n4", "--a", "1,1,-2", "--b", "2,-3,1",
            "--grid", "1,-2",
        )
        assert code == EXIT_CONFIG


class TestDualCommand:
    def test_report(self, capsys, tmp_path):
        out_file = tmp_path / "dual.json"
        code, _, _ = run_cli(
            capsys, "dual", "--n", "5", "--seed", "1", "--out", str(out_file)
        )
        assert code == EXIT_OK
        payload = json.loads(out_file.read_text())
        assert payload["verdicts"]["codim2_constant"] is True
        assert payload["verdicts"]["euclidean_angles"] is True


class TestSearchCommand:
    def test_summary_and_log(self, capsys, tmp_path):
        log = tmp_path / "hits.jsonl"
        code, out, _ = run_cli(
            capsys,
            "search", "--n", "4", "--samples", "50", "--seed", "3",
            "--log", str(log),
        )
        assert code == EXIT_OK
        summary = json.loads(out)
        assert sum(summary["counts"].values()) == 50
        assert log.exists()
        code2, out2, _ = run_cli(
            capsys,
            "search", "--n", "4", "--samples", "10", "--seed", "3",
            "--log", str(log), "--resume",
        )
        assert json.loads(out2)["start"] == 50


class TestLemmaCheck:
    def test_single_bundle(self, capsys):
        code, out, _ = run_cli(
            capsys, "lemma-check", "theorem-4.7", "--n", "5", "--seed", "1"
        )
        assert code == EXIT_OK
        assert out.startswith("PASS theorem-4.7")

    def test_quick_bundles(self, capsys):
        for name in ("lemma-3.2", "lemma-3.4", "theorem-1.2", "theorem-1.6"):
            code, out, _ = run_cli(capsys, "lemma-check", name)
            assert code == EXIT_OK, out
            assert out.startswith("PASS")

    def test_count_override(self, capsys):
        code, out, _ = run_cli(
            capsys, "lemma-check", "lemma-2.5", "--count", "50"
        )
        assert code == EXIT_OK
        assert "50 random" in out

    def test_unknown_bundle(self, capsys):
        code, _, err = run_cli(capsys, "lemma-check", "lemma-9.9")
        assert code == EXIT_CONFIG


class TestSeedOverride:
    def test_env_seed_wins(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("FLEXIPLEX_SEED", "5")
        code, out, _ = run_cli(capsys, "family", "--kind", "odd", "--n", "5", "--seed", "1")
        monkeypatch.delenv("FLEXIPLEX_SEED")
        code2, out2, _ = run_cli(capsys, "family", "--kind", "odd", "--n", "5", "--seed", "5")
        assert code == code2 == EXIT_OK
        assert out == out2
