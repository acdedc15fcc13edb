"""
实验驱动测试：语料、报告、回归文件
"""
import json
from pathlib import Path

import pytest

from src.algebra.poly import poly_parse
from src.config import ConfigError, load_kv_file
from src.harness.corpus import (
    CorpusExhausted, CorpusSpec, generate_corpus, is_absolutely_irreducible,
    top_part_absolutely_irreducible,
)
from src.harness.report import ExperimentReport
from src.harness.regression import compare_regression, freeze_regression, load_regression
from src.harness.experiments import (
    experiment_affine_curve_bound, experiment_chebyshev, experiment_curve_bound,
    experiment_padic, experiment_surface_linear, experiment_witness_floor, run_experiment,
)

XY = ["x", "y"]
XYZ = ["x", "y", "z"]
CONIC = "x*z - y^2"
DATA = Path(__file__).resolve().parent.parent / "data"
EXAMPLES = DATA / "examples"
REGRESSION_FILE = DATA / "regression.json"


class TestCorpus:
    """随机语料"""

    def test_reproducible(self):
        spec = CorpusSpec(degrees=(2,), coeff_bound=3, count=3, seed=7)
        first = generate_corpus(spec)
        assert first == generate_corpus(spec)
        for f in first:
            assert f.nvars == 3
            assert f.is_homogeneous()
            assert f.degree == 2
            assert f.is_primitive()

    def test_affine_corpus(self):
        spec = CorpusSpec(degrees=(2, 3), coeff_bound=5, nvars=2, count=4, seed=1,
                          homogeneous=False)
        for f in generate_corpus(spec):
            assert f.degree in (2, 3)
            assert is_absolutely_irreducible(f)

    def test_exhausted(self):
        """尝试上限小于需要的数量"""
        spec = CorpusSpec(degrees=(3,), coeff_bound=5, nvars=2, count=10, homogeneous=False,
                          filters=("reducible",), max_attempts=5)
        with pytest.raises(CorpusExhausted) as exc:
            generate_corpus(spec)
        assert exc.value.attempts == 5

    def test_invalid_corpus_parameters(self):
        with pytest.raises(ValueError):
            CorpusSpec(degrees=(), coeff_bound=3)
        with pytest.raises(ValueError):
            CorpusSpec(degrees=(2,), coeff_bound=3, filters=("smooth",))
        with pytest.raises(ValueError):
            CorpusSpec(degrees=(2,), coeff_bound=3, homogeneous=False)

    def test_from_kv(self):
        spec = CorpusSpec.from_kv({"degrees": "2-4", "count": "5", "filters": "primitive"})
        assert spec.degrees == (2, 3, 4)
        assert spec.count == 5
        assert spec.filters == ("primitive",)

    def test_from_kv_invalid(self):
        with pytest.raises(ConfigError):
            CorpusSpec.from_kv({"degrees": "two"})

    def test_absolute_filter(self):
        assert is_absolutely_irreducible(poly_parse("x^2 + y^2 - z^2", XYZ))
        assert not is_absolutely_irreducible(poly_parse("x^2 + y^2", XYZ))
        assert not is_absolutely_irreducible(poly_parse("x*z + z^2", XYZ))
        assert is_absolutely_irreducible(poly_parse("x + y", XYZ))
        assert not is_absolutely_irreducible(poly_parse("(x + y)^2 - 1", XY))

    def test_top_part(self):
        assert top_part_absolutely_irreducible(poly_parse("x^5 + y^5 + z^5 + x*y*z + 1", XYZ))
        assert not top_part_absolutely_irreducible(poly_parse("x^2 - y^2 + z", XYZ))


def _report(**overrides):
    data = dict(experiment="demo", inputs={"bounds": [1, 2]},
                records=[{"id": "a", "N": 1, "pts": [1, 2]}, {"id": "b", "N": 2, "M": 3}],
                aggregates={"max_ratio": 0.5, "instances": 2}, checks={"bezout": True})
    data.update(overrides)
    return ExperimentReport(**data)


class TestReport:
    """报告导出"""

    def test_passed(self):
        assert _report().passed
        assert not _report(checks={"bezout": False}).passed

    def test_regression_key_stable(self):
        """键只依赖实验名与输入"""
        assert _report().regression_key == _report(records=[]).regression_key
        assert _report().regression_key != _report(inputs={"bounds": [1]}).regression_key
        assert _report().regression_key.startswith("demo-")

    def test_regression_values(self):
        assert _report().regression_values == {"max_ratio": 0.5}

    def test_mismatch_fails(self):
        assert not _report().with_regression("mismatch").passed
        with pytest.raises(ValueError):
            _report().with_regression("stale")

    def test_json(self):
        data = json.loads(_report().to_json())
        assert data["schema_version"] == 1
        assert data["regression"]["status"] is None
        assert len(data["records"]) == 2

    def test_csv(self):
        lines = _report().to_csv().splitlines()
        assert lines[0] == "id,N,pts,M"
        assert lines[1] == 'a,1,"[1, 2]",'
        assert lines[2] == "b,2,,3"


class TestRegression:
    """回归文件"""

    def test_missing_file(self, tmp_path):
        assert load_regression(tmp_path / "none.json") == {"provenance": {}, "entries": {}}

    def test_freeze_and_compare(self, tmp_path):
        path = tmp_path / "regression.json"
        report = _report()
        assert compare_regression(report, path).regression_status == "unfrozen"
        entry = freeze_regression(report, path)
        assert entry["values"] == {"max_ratio": 0.5}
        assert compare_regression(report, path).regression_status == "match"
        changed = _report(aggregates={"max_ratio": 0.75})
        result = compare_regression(changed, path)
        assert result.regression_status == "mismatch"
        assert result.regression_detail["frozen"] == {"max_ratio": 0.5}
        assert not result.passed

    def test_default_path_from_env(self, tmp_path):
        """路径缺省取 DGC_REGRESSION_PATH"""
        freeze_regression(_report())
        assert (tmp_path / "regression.json").exists()

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ValueError):
            load_regression(path)


class TestCurveExperiment:
    """射影平面曲线实验"""

    def test_conic(self):
        report = experiment_curve_bound([poly_parse(CONIC, XYZ)], [1])
        record = report.records[0]
        assert record["id"] == "f000-B001"
        assert record["N"] == 4
        assert record["M"] == 2
        assert record["ratio"] == pytest.approx(0.25)
        assert report.checks == {"bezout": True, "certificates": True}
        assert report.aggregates["max_M"] == 2
        assert report.passed

    def test_with_witness(self):
        report = experiment_curve_bound([], [], witness_degrees=[3])
        record = report.records[0]
        assert record["id"] == "w03-B001"
        assert record["N"] == 7
        assert record["witness_floor"]
        assert report.checks["witness_floor"]

    def test_failure_recorded(self):
        """可约输入记为失败，不中断实验"""
        report = experiment_curve_bound([poly_parse("x*y", XYZ), poly_parse(CONIC, XYZ)], [1])
        assert "error" in report.records[0]
        assert report.aggregates["failures"] == 1
        assert report.passed

    def test_requires_forms(self):
        with pytest.raises(ValueError):
            experiment_curve_bound([poly_parse("x - y", XY)], [1])


class TestAffineExperiment:

    def test_circle(self):
        report = experiment_affine_curve_bound([poly_parse("x^2 + y^2 - 25", XY)], [5])
        record = report.records[0]
        assert record["N"] == 12
        assert record["schwarz_zippel"]
        assert record["badness"] == pytest.approx(1.0)
        assert report.aggregates["max_shape_ratio"] == pytest.approx(record["shape_ratio"])
        assert report.passed

    def test_not_absolutely_irreducible(self):
        report = experiment_affine_curve_bound([poly_parse("x^2 + y^2", XY)], [1, 2])
        assert report.aggregates["failures"] == 2
        assert report.aggregates["max_ratio"] is None


class TestSurfaceExperiment:

    def test_quintic(self):
        f = poly_parse("x^5 + y^5 + z^5 + x*y*z + 1", XYZ)
        report = experiment_surface_linear(f, [1, 2])
        assert [r["B"] for r in report.records] == [1, 2]
        assert "slope" in report.aggregates
        assert report.checks["schwarz_zippel"]

    def test_degree_too_small(self):
        with pytest.raises(ValueError):
            experiment_surface_linear(poly_parse("x^2 + y^2 + z^2 - 1", XYZ), [1])

    def test_reducible_top(self):
        with pytest.raises(ValueError):
            experiment_surface_linear(poly_parse("x^5 - y^5 + z", XYZ), [1])


class TestConstantFreeExperiments:

    def test_witness_floor(self):
        report = experiment_witness_floor(4)
        assert len(report.records) == 4
        assert report.checks == {"floor": True}

    def test_padic(self):
        report = experiment_padic(count=5, seed=0, sizes=(2, 3), primes=[5, 7])
        assert len(report.records) == 5
        assert report.checks == {"divisibility": True}

    def test_chebyshev(self):
        report = experiment_chebyshev(1000)
        assert report.checks == {"chebyshev": True}
        assert report.records[0]["id"] == "x1000"


class TestRunExperiment:
    """配置文件分派"""

    def test_unknown(self):
        with pytest.raises(ConfigError):
            run_experiment({"experiment": "galois"})

    def test_curve_bound_from_poly(self):
        report = run_experiment({"experiment": "curve_bound", "poly": CONIC, "bounds": "1"})
        assert report.records[0]["N"] == 4
        assert report.inputs["poly"] == CONIC

    def test_witness_floor(self):
        report = run_experiment({"experiment": "witness_floor", "d_max": "3"})
        assert len(report.records) == 3

    def test_bad_bounds(self):
        with pytest.raises(ConfigError):
            run_experiment({"experiment": "curve_bound", "poly": CONIC, "bounds": "0"})

    def test_surface_requires_poly(self):
        with pytest.raises(ConfigError):
            run_experiment({"experiment": "surface_linear"})


class TestShippedRegression:
    """随仓库发布的冻结值"""

    @pytest.mark.parametrize("config,key,values", [
        ("conic_curve_bound.txt", "curve_bound-af8b16e9dc2d", {"max_ratio": 0.25}),
        ("circle_affine.txt", "affine_curve_bound-5ca60e39d04b",
         {"max_ratio": 0.25, "max_shape_ratio": 0.125}),
    ])
    def test_frozen_entries_match(self, config, key, values):
        report = run_experiment(load_kv_file(EXAMPLES / config))
        assert report.regression_key == key
        assert report.regression_values == values
        result = compare_regression(report, REGRESSION_FILE)
        assert result.regression_status == "match"
        assert result.passed
