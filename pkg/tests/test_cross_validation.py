"""
全尺寸交叉验证（慢速）

pytest tests/ -m slow
"""
import random

import pytest

from src.algebra.poly import IntPoly, monomials_of_degree, poly_parse
from src.detmethod.auxpoly import is_irreducible_over_q
from src.detmethod.bounds import chebyshev_check
from src.detmethod.stalk import stalk_hilbert, tangent_cone_hilbert
from src.geometry.normalize import normalize_leading_coeff
from src.harness.corpus import CorpusSpec, generate_corpus
from src.harness.experiments import (
    experiment_curve_bound, experiment_padic, experiment_witness_floor,
)
from src.irreducibility import absolutely_irreducible, is_squarefree
from src.irreducibility.badness import bad_primes

XY = ["x", "y"]

pytestmark = pytest.mark.slow


class TestWitnessFloor:

    def test_degrees_up_to_12(self):
        report = experiment_witness_floor(12)
        assert report.checks == {"floor": True}
        assert len(report.records) == 12


class TestCurveBound:

    def test_fifty_curve_corpus(self):
        """50 条 2..6 次射影平面曲线，B ∈ {1, 2, 5, 10, 20}：证书全部通过且满足 Bézout"""
        corpus = generate_corpus(CorpusSpec(degrees=(2, 3, 4, 5, 6), coeff_bound=10, count=50))
        assert len(corpus) == 50
        report = experiment_curve_bound(corpus, [1, 2, 5, 10, 20])
        assert report.aggregates["instances"] == 250
        assert report.aggregates["failures"] == 0
        assert report.checks == {"bezout": True, "certificates": True}


class TestIrreducibilityOracle:

    def test_against_rational_factorization(self):
        """200 个随机二元多项式：绝对不可约蕴含 Q 上不可约，Q 上可约蕴含不绝对不可约"""
        spec = CorpusSpec(degrees=(2, 3, 4), coeff_bound=5, nvars=2, count=200, seed=7,
                          homogeneous=False, filters=(), density=0.6)
        checked = 0
        for f in generate_corpus(spec):
            if not is_squarefree(f):
                continue
            irreducible_q = is_irreducible_over_q(f)
            absolute = absolutely_irreducible(f)
            if absolute:
                assert irreducible_q, f
            if not irreducible_q:
                assert not absolute, f
            checked += 1
        assert checked > 150

    def test_products_are_reducible(self):
        """语料中两两相乘得到的多项式不绝对不可约"""
        spec = CorpusSpec(degrees=(1, 2, 3), coeff_bound=5, nvars=2, count=40, seed=11,
                          homogeneous=False, filters=("primitive",))
        corpus = generate_corpus(spec)
        for g, h in zip(corpus[::2], corpus[1::2]):
            f = g * h
            if not is_squarefree(f):
                continue
            assert not absolutely_irreducible(f), f
            assert not is_irreducible_over_q(f)


class TestStalkOracle:

    def test_full_table(self):
        """n ≤ 3, μ ≤ 5, k ≤ 10 全部一致"""
        for n in range(1, 4):
            for mu in range(1, 6):
                for k in range(11):
                    assert stalk_hilbert(n, mu, k) == tangent_cone_hilbert(n, mu, k), (n, mu, k)


class TestPadicDivisibility:

    def test_hundred_instances(self):
        report = experiment_padic(count=100, seed=0)
        assert report.checks == {"divisibility": True}
        assert {r["p"] for r in report.records} <= set(report.inputs["primes"])


class TestChebyshev:

    def test_up_to_million(self):
        assert chebyshev_check(10 ** 6).holds


class TestBadPrimeScan:

    @pytest.mark.parametrize("text,expected", [
        ("x^2 - y^2 + 439", [439]),
        ("x^2 + y^2 - 1", []),
    ])
    def test_minors_match_scan(self, text, expected):
        report = bad_primes(poly_parse(text, XY), prime_scan_limit=10 ** 5)
        assert list(report.bad_primes) == expected
        assert report.scan_agrees is True

    def test_random_corpus(self):
        """20 个随机绝对不可约二元多项式：子式 gcd 与逐素数扫描一致"""
        spec = CorpusSpec(degrees=(2, 3), coeff_bound=20, nvars=2, count=20, seed=3,
                          homogeneous=False)
        for f in generate_corpus(spec):
            report = bad_primes(f, prime_scan_limit=2 * 10 ** 4)
            assert report.is_absolutely_irreducible
            assert report.scan_agrees is True, report.to_dict()


class TestLeadingCoefficient:

    def test_random_forms(self):
        """1000 个 n ≤ 2、d ≤ 6、‖f‖ ≤ 100 的型：首项系数下界与 ‖f′‖ 上界同时成立"""
        rng = random.Random(2024)
        checked = 0
        while checked < 1000:
            nvars = rng.choice([2, 3, 4])
            d = rng.randint(1, 6)
            mapping = {e: rng.randint(-100, 100) for e in monomials_of_degree(nvars, d)}
            f = IntPoly.from_dict(nvars, mapping)
            if f.is_zero:
                continue
            result = normalize_leading_coeff(f)
            assert result.lower_bound_holds
            assert result.norm_bound_holds, f
            assert abs(result.leading_coeff) * 3 ** ((nvars - 1) * d) >= f.coeff_norm()
            assert result.f_shifted.is_homogeneous()
            checked += 1
