"""
下界见证曲线测试
"""
import pytest

from src.algebra.poly import poly_parse
from src.witness.curves import (
    build_witness, kronecker_vandermonde_det_check, spot_check_higher,
    verify_affine_lower_bound, verify_grid, verify_projective_lower_bound, witness_height,
)

XY = ["x", "y"]


class TestConstruction:
    """构造"""

    @pytest.mark.parametrize("d,text", [
        (1, "x"),
        (2, "x^2 + y"),
        (3, "x^3 + y^2 - x + y"),
    ])
    def test_small_degrees(self, d, text):
        assert build_witness(d).f == poly_parse(text, XY)

    def test_grid_and_count(self):
        w = build_witness(3)
        assert w.grid == (-1, 0)
        assert w.exponent_cap == 1
        assert w.claimed_count == 4
        assert verify_grid(w)

    @pytest.mark.parametrize("d", range(2, 13))
    def test_edge_certified(self, d):
        w = build_witness(d)
        assert w.edge_certified
        assert w.f.degree == d
        assert w.f.is_primitive()
        assert verify_grid(w)

    def test_height(self):
        assert [witness_height(d) for d in (1, 2, 3, 5, 9, 13)] == [1, 1, 1, 1, 2, 3]

    def test_invalid(self):
        with pytest.raises(ValueError):
            build_witness(0)
        with pytest.raises(ValueError):
            build_witness(3, n=1)

    def test_to_dict(self):
        data = build_witness(3).to_dict()
        assert data["f"] == "x^3 + y^2 - x + y"
        assert data["grid"] == [-1, 0]


class TestDeterminant:
    """Kronecker 幂的行列式"""

    def test_d3(self):
        check = kronecker_vandermonde_det_check(build_witness(3))
        assert check.vandermonde_det == 1
        assert check.exponent == 4
        assert check.matches

    def test_d5(self):
        """网格 (-1, 0, 1)：|det V| = 2，指数 6"""
        check = kronecker_vandermonde_det_check(build_witness(5))
        assert abs(check.vandermonde_det) == 2
        assert abs(check.det) == 64
        assert check.matches


class TestLowerBounds:
    """下界验证"""

    def test_projective_d3(self):
        """6 个仿射网格零点外加 (0:1:0)"""
        report = verify_projective_lower_bound(build_witness(3))
        assert report.count == 7
        assert report.grid_floor == 5
        assert report.holds

    @pytest.mark.parametrize("d", [1, 2])
    def test_projective_small(self, d):
        report = verify_projective_lower_bound(build_witness(d))
        assert report.count == 4
        assert report.holds

    @pytest.mark.parametrize("d", range(3, 9))
    def test_projective_floor(self, d):
        assert verify_projective_lower_bound(build_witness(d)).holds

    def test_affine_d3(self):
        report = verify_affine_lower_bound(build_witness(3))
        assert report.count == 6
        assert report.holds

    def test_affine_requires_d3(self):
        with pytest.raises(ValueError):
            verify_affine_lower_bound(build_witness(2))

    def test_higher_spot_check(self):
        w = build_witness(3, n=3)
        assert w.f == poly_parse("x^3 + y^3 + z^2", ["x", "y", "z"])
        check = spot_check_higher(w, 1)
        assert check.count >= 1
        assert check.ratio == pytest.approx(check.count / 9)

    def test_higher_requires_n3(self):
        with pytest.raises(ValueError):
            spot_check_higher(build_witness(3), 1)
