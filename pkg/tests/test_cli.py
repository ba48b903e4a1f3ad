"""CLI surface: flags, exit codes, deterministic outputs, manifests."""

import hashlib
import json

from vcbounds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBound:
    def test_single_set_table(self, capsys):
        code, out, _ = run(capsys, "bound", "--n", "100", "--eps", "0.1", "--m", "1")
        assert code == 0
        assert "0.270671" in out  # classical
        assert "0.101471" in out  # refined

    def test_auto_growth_from_class(self, capsys):
        code, out, _ = run(capsys, "bound", "--n", "100", "--eps", "0.1", "--class", "intervals")
        assert code == 0
        assert "m=5051" in out.replace(".0", "")

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "bound", "--n", "50", "--eps", "0.2", "--m", "10", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert doc["classical"]["clamped_total"] <= 1.0

    def test_growth_selection_modes(self, capsys):
        code, out_exact, _ = run(capsys, "bound", "--n", "10", "--eps", "0.1", "--class", "intervals", "--format", "json")
        code2, out_sauer, _ = run(capsys, "bound", "--n", "10", "--eps", "0.1", "--class", "intervals", "--growth", "sauer", "--format", "json")
        code3, out_n2, _ = run(capsys, "bound", "--n", "10", "--eps", "0.1", "--class", "intervals", "--growth", "paper-n2", "--format", "json")
        assert code == code2 == code3 == 0
        assert json.loads(out_exact)["params"]["m"] == 56.0
        assert json.loads(out_sauer)["params"]["m"] == 56.0
        assert json.loads(out_n2)["params"]["m"] == 100.0

    def test_paper_n2_rejected_for_other_classes(self, capsys):
        code, _, err = run(capsys, "bound", "--n", "10", "--eps", "0.1", "--class", "rays", "--growth", "paper-n2")
        assert code == 2

    def test_halfplane_sauer_growth(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--n", "10", "--eps", "0.1", "--class", "halfplanes",
            "--dim", "2", "--growth", "sauer", "--format", "json",
        )
        assert code == 0
        # VC dimension of half-planes is 3: sum_{i<=3} C(10, i) = 176
        assert json.loads(out)["params"]["m"] == 176.0

    def test_invalid_n(self, capsys):
        code, _, _ = run(capsys, "bound", "--n", "0", "--eps", "0.1", "--m", "1")
        assert code == 2

    def test_m_and_class_mutually_exclusive(self, capsys):
        code, _, _ = run(capsys, "bound", "--n", "10", "--eps", "0.1", "--m", "1", "--class", "rays")
        assert code == 2
        code, _, _ = run(capsys, "bound", "--n", "10", "--eps", "0.1")
        assert code == 2


class TestCompare:
    def test_winner_column(self, capsys):
        code, out, _ = run(capsys, "compare", "--n-range", "100", "--eps-range", "0.05,0.1,0.15")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,epsilon,m,classical,refined_total,refined_normal_term,refined_be_term,winner"
        winners = [ln.split(",")[-1] for ln in lines[1:]]
        assert winners == ["refined", "refined", "classical"]

    def test_range_spec(self, capsys):
        code, out, _ = run(capsys, "compare", "--n-range", "50:150:50", "--eps-range", "0.1:0.3:0.1")
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 3 * 3

    def test_empty_range_usage_error(self, capsys):
        code, _, _ = run(capsys, "compare", "--n-range", "", "--eps-range", "0.1")
        assert code == 2

    def test_byte_identical_csv_and_manifest(self, tmp_path, capsys):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        for out in (out1, out2):
            code, _, _ = run(capsys, "compare", "--n-range", "10:60:10", "--eps-range", "0.02:0.2:0.02", "--out", str(out))
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()
        manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
        digest = hashlib.sha256(out1.read_bytes()).hexdigest()
        assert manifest["outputs"][0]["sha256"] == digest
        assert manifest["schema_version"] == "1"
        assert "--n-range" in manifest["command"]

    def test_unwritable_output(self, capsys):
        code, _, _ = run(capsys, "compare", "--n-range", "10", "--eps-range", "0.1", "--out", "/nonexistent-dir/x.csv")
        assert code == 3

    def test_class_flag_updates_m_per_row(self, capsys):
        code, out, _ = run(capsys, "compare", "--n-range", "10,20", "--eps-range", "0.1", "--class", "intervals")
        assert code == 0
        rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
        assert float(rows[0][2]) == 56.0  # 10*11/2 + 1
        assert float(rows[1][2]) == 211.0  # 20*21/2 + 1

    def test_descending_range_rejected(self, capsys):
        code, _, _ = run(capsys, "compare", "--n-range", "100:50:10", "--eps-range", "0.1")
        assert code == 2


class TestCrossover:
    def test_window_printed_six_digits(self, capsys):
        code, out, _ = run(capsys, "crossover", "--n", "100")
        assert code == 0
        assert "(0.0204757, 0.133774)" in out.replace("(0.0204757,", "(0.0204757,")
        assert "0.0204757" in out and "0.133774" in out

    def test_empty_window(self, capsys):
        code, out, _ = run(capsys, "crossover", "--n", "1", "--variant", "two_sided")
        assert code == 0
        assert out.strip() == "empty"

    def test_m_flag_rejected(self, capsys):
        code, _, _ = run(capsys, "crossover", "--n", "100", "--m", "5")
        assert code == 2


class TestSimulate:
    def test_reproducible_json_with_pass_verdicts(self, tmp_path, capsys):
        args = [
            "simulate", "--class", "intervals", "--dist", "uniform01",
            "--n", "50", "--eps", "0.3", "--trials", "1000", "--seed", "12",
        ]
        code, out, _ = run(capsys, *args)
        assert code == 0
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert doc["params"]["growth_value"] == 1276.0
        assert [v["status"] for v in doc["verdicts"]] == ["PASS", "PASS"]
        assert doc["manifest"]["base_seeds"] == [12]

        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        code1, _, _ = run(capsys, *args, "--workers", "1", "--out", str(out1))
        code2, _, _ = run(capsys, *args, "--workers", "4", "--out", str(out2))
        assert code1 == code2 == 0
        assert out1.read_bytes() == out2.read_bytes()
        manifest = json.loads((tmp_path / "r1.json.manifest.json").read_text())
        assert manifest["base_seeds"] == [12]
        assert "elapsed_seconds" in manifest

    def test_trials_zero_usage_error(self, capsys):
        code, _, _ = run(capsys, "simulate", "--class", "intervals", "--n", "10", "--eps", "0.1", "--trials", "0")
        assert code == 2

    def test_unsupported_exit_code(self, capsys):
        code, _, err = run(
            capsys, "simulate", "--class", "halfplanes", "--dist", "gaussian", "--dim", "2",
            "--n", "500", "--eps", "0.1", "--trials", "10",
        )
        assert code == 4
        code, _, _ = run(
            capsys, "simulate", "--class", "halfplanes", "--dist", "uniform01",
            "--n", "50", "--eps", "0.1", "--trials", "10",
        )
        assert code == 4


class TestGrowth:
    def test_interval_table(self, capsys):
        code, out, _ = run(capsys, "growth", "--class", "intervals", "--r-range", "1:5:1")
        assert code == 0
        values = [int(ln.split()[-1]) for ln in out.strip().splitlines()[1:]]
        assert values == [2, 4, 7, 11, 16]

    def test_halfplane_csv(self, capsys):
        code, out, _ = run(capsys, "growth", "--class", "halfplanes", "--dim", "2", "--r-range", "3", "--format", "csv")
        assert code == 0
        assert out.strip().splitlines() == ["r,growth", "3,8"]

    def test_r_zero(self, capsys):
        code, out, _ = run(capsys, "growth", "--class", "rays", "--r-range", "0", "--format", "csv")
        assert code == 0
        assert out.strip().splitlines()[-1] == "0,1"

    def test_higher_dimension_closed_form(self, capsys):
        code, out, _ = run(capsys, "growth", "--class", "halfplanes", "--dim", "3", "--r-range", "4", "--format", "csv")
        assert code == 0
        assert out.strip().splitlines()[-1] == "4,16"


def test_worker_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("VCBOUNDS_WORKERS", "2")
    out = tmp_path / "env.json"
    code, _, _ = run(
        capsys, "simulate", "--class", "intervals", "--n", "20", "--eps", "0.2",
        "--trials", "400", "--seed", "3", "--out", str(out),
    )
    assert code == 0
    baseline = tmp_path / "one.json"
    monkeypatch.setenv("VCBOUNDS_WORKERS", "1")
    code, _, _ = run(
        capsys, "simulate", "--class", "intervals", "--n", "20", "--eps", "0.2",
        "--trials", "400", "--seed", "3", "--out", str(baseline),
    )
    assert code == 0
    assert out.read_bytes() == baseline.read_bytes()


def test_unknown_command_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert "vcbounds" in out
