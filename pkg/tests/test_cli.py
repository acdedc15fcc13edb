"""
命令行测试
"""
import json
import os
from pathlib import Path

import pytest

from src.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


class TestUsage:

    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE
        assert "dgc" in capsys.readouterr().out

    def test_missing_required_option(self):
        """argparse 自身的用法错误"""
        with pytest.raises(SystemExit) as exc:
            main(["count", "--poly", "x"])
        assert exc.value.code == 2

    def test_syntax_error(self, capsys):
        assert main(["count", "--poly", "2x", "--bound", "1"]) == EXIT_USAGE
        assert "错误" in capsys.readouterr().err

    def test_missing_instance_file(self, tmp_path):
        assert main(["padic-check", "--instance", str(tmp_path / "none.json")]) == EXIT_USAGE


class TestCount:

    def test_affine(self, capsys):
        code, data = run_json(capsys, ["count", "--poly", "x^2 + y^2 - 25", "--bound", "5"])
        assert code == EXIT_OK
        assert data["count"] == 12

    def test_projective_list(self, capsys):
        code = main(["count", "--poly", "x*z - y^2", "--vars", "x,y,z", "--bound", "1",
                     "--mode", "projective", "--list"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "projective 点数 (B=1): 4" in out
        assert "[1, -1, 1]" in out

    def test_work_limit(self, monkeypatch):
        monkeypatch.setenv("DGC_WORK_LIMIT", "10")
        assert main(["count", "--poly", "x - y", "--bound", "5"]) == EXIT_CHECK_FAILED


class TestAuxpoly:

    def test_conic(self, capsys):
        code, data = run_json(capsys, ["auxpoly", "--poly", "x*z - y^2", "--bound", "1"])
        assert code == EXIT_OK
        assert data["M"] == 2
        assert data["check"]["passed"] is True

    def test_store(self, capsys):
        code, data = run_json(capsys, ["auxpoly", "--poly", "x*z - y^2", "--bound", "1", "--store"])
        assert code == EXIT_OK
        assert data["certificate_id"] == 1
        assert Path(os.environ["DGC_DB_PATH"]).exists()

    def test_degree_cap(self):
        """超过 M 上限属于计算中止"""
        code = main(["auxpoly", "--poly", "x - y", "--vars", "x,y", "--mode", "affine",
                     "--bound", "1", "--max-degree", "2"])
        assert code == EXIT_CHECK_FAILED

    def test_reducible(self):
        code = main(["auxpoly", "--poly", "x^2 - y^2", "--vars", "x,y", "--mode", "affine",
                     "--bound", "1"])
        assert code == EXIT_USAGE


class TestBadness:

    def test_scan(self, capsys):
        code, data = run_json(capsys, ["badness", "--poly", "x^2 - y^2 + 439",
                                       "--prime-scan-limit", "450"])
        assert code == EXIT_OK
        assert data["bad_primes"] == [439]
        assert data["scan_agrees"] is True

    def test_text_output(self, capsys):
        assert main(["badness", "--poly", "x^2 + y^2 - 1"]) == EXIT_OK
        assert "坏素数: []" in capsys.readouterr().out


class TestWitness:

    def test_verify_both(self, capsys):
        code, data = run_json(capsys, ["witness", "--degree", "3", "--verify", "both"])
        assert code == EXIT_OK
        assert data["f"] == "x^3 + y^2 - x + y"
        assert data["grid_vanishes"] is True
        assert data["determinant"]["matches"] is True
        assert data["projective"]["count"] == 7
        assert data["affine"]["count"] == 6

    def test_three_variables(self, capsys):
        code, data = run_json(capsys, ["witness", "--degree", "3", "--nvars", "3"])
        assert code == EXIT_OK
        assert data["f"] == "x^3 + y^3 + z^2"


class TestProject:

    def test_twisted_cubic(self, capsys):
        code, data = run_json(capsys, ["project", "--curve", str(EXAMPLES / "twisted_cubic.txt"),
                                       "--bound", "3"])
        assert code == EXIT_OK
        assert data["direction"] == [1, -1, -1]

    def test_conic_line(self, capsys):
        """缺省不穷举像曲线"""
        code, data = run_json(capsys, ["project", "--curve", str(EXAMPLES / "conic_line.txt"),
                                       "--bound", "1"])
        assert code == EXIT_OK
        assert data["relation"]["source_count"] == 4
        assert data["relation"]["image_count"] is None

    def test_twisted_cubic_projective(self, capsys):
        """割线分支上的点不计入 N(X, B)"""
        code, data = run_json(capsys, ["project", "--curve",
                                       str(EXAMPLES / "twisted_cubic_projective.txt"),
                                       "--bound", "1"])
        assert code == EXIT_OK
        assert data["projection"]["image"] == "x0^2*x3 - x0*x1^2 - x1^3"
        assert data["projection"]["extra_components"] == ["x1"]
        assert data["relation"]["excluded"] == 2

    def test_missing_curve_file(self, tmp_path):
        assert main(["project", "--curve", str(tmp_path / "none.txt"), "--bound", "1"]) == EXIT_USAGE


class TestPadicCheck:

    def test_example_instance(self, capsys):
        code, data = run_json(capsys, ["padic-check", "--instance", str(EXAMPLES / "conic_p5.json")])
        assert code == EXIT_OK
        assert data["passed"] is True
        assert data["required"] == 1


class TestExperiment:

    @pytest.fixture
    def config(self, tmp_path):
        path = tmp_path / "affine.txt"
        path.write_text("experiment = affine_curve_bound\npoly = x^2 + y^2 - 1\nbounds = 1\n",
                        encoding="utf-8")
        return path

    def test_unfrozen(self, capsys, config):
        code, data = run_json(capsys, ["experiment", "--config", str(config)])
        assert code == EXIT_OK
        assert data["regression"]["status"] == "unfrozen"
        assert data["records"][0]["N"] == 4

    def test_freeze_then_compare(self, capsys, config):
        assert main(["experiment", "--config", str(config), "--freeze"]) == EXIT_OK
        capsys.readouterr()
        code, data = run_json(capsys, ["experiment", "--config", str(config)])
        assert code == EXIT_OK
        assert data["regression"]["status"] == "match"

    def test_mismatch(self, capsys, config):
        """篡改冻结值后回归失败"""
        assert main(["experiment", "--config", str(config), "--freeze"]) == EXIT_OK
        capsys.readouterr()
        path = Path(os.environ["DGC_REGRESSION_PATH"])
        frozen = json.loads(path.read_text(encoding="utf-8"))
        for entry in frozen["entries"].values():
            entry["values"]["max_ratio"] = 99.0
        path.write_text(json.dumps(frozen), encoding="utf-8")
        code, data = run_json(capsys, ["experiment", "--config", str(config)])
        assert code == EXIT_CHECK_FAILED
        assert data["regression"]["status"] == "mismatch"
        assert data["passed"] is False

    def test_csv_and_store(self, capsys, config, tmp_path):
        csv_path = tmp_path / "records.csv"
        code, data = run_json(capsys, ["experiment", "--config", str(config),
                                       "--csv", str(csv_path), "--store"])
        assert code == EXIT_OK
        assert data["run_id"] == 1
        assert csv_path.read_text(encoding="utf-8").startswith("id,")

    def test_unknown_experiment(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("experiment = nothing\n", encoding="utf-8")
        assert main(["experiment", "--config", str(path)]) == EXIT_USAGE
