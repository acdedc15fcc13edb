"""
点计数测试
"""
import pytest

from src.algebra.poly import poly_parse
from src.pointcount.points import AffinePoint, ProjPoint, shell_vectors, vectors_by_norm
from src.pointcount.counting import (
    WorkLimitExceeded, check_schwarz_zippel, enumerate_affine, enumerate_projective,
    find_point_off_variety, projective_candidates, schwarz_zippel_bound,
)

XY = ["x", "y"]


class TestPoints:
    """射影点规范代表元"""

    def test_canonical(self):
        assert ProjPoint.canonical((-2, 4, 0)).coords == (1, -2, 0)
        assert ProjPoint.canonical((0, -3, 6)).coords == (0, 1, -2)

    def test_rejects_non_primitive(self):
        with pytest.raises(ValueError):
            ProjPoint((2, 4))

    def test_rejects_negative_lead(self):
        with pytest.raises(ValueError):
            ProjPoint((0, -1, 1))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            ProjPoint.canonical((0, 0))

    def test_height(self):
        assert ProjPoint((1, -3, 2)).height == 3
        assert AffinePoint((0, -4)).sup_norm() == 4


class TestShells:
    """范数壳顺序"""

    def test_shell_sizes(self):
        assert len(shell_vectors(2, 1)) == 8
        assert shell_vectors(3, 0) == [(0, 0, 0)]

    def test_shell_order(self):
        """非零分量少者优先，靠前分量优先，正号优先"""
        shell = shell_vectors(2, 1)
        assert shell[:4] == [(1, 0), (-1, 0), (0, 1), (0, -1)]

    def test_vectors_by_norm(self):
        vecs = list(vectors_by_norm(2, 2))
        assert len(vecs) == 25
        assert vecs[0] == (0, 0)


class TestEnumerate:
    """穷举计数"""

    def test_circle(self):
        """x^2 + y^2 = 25 有 12 个整点"""
        result = enumerate_affine(poly_parse("x^2 + y^2 - 25", XY), 5)
        assert result.count == 12
        assert AffinePoint((3, -4)) in result.points

    def test_line(self):
        result = enumerate_affine(poly_parse("x - y", XY), 1)
        assert result.count == 3

    def test_system(self):
        """两条直线的交点"""
        system = [poly_parse("x - y", XY), poly_parse("x + y", XY)]
        assert enumerate_affine(system, 3).count == 1

    def test_projective_conic(self):
        """x0 x2 = x1^2 上高度 1 的 4 个点"""
        F = poly_parse("x0*x2 - x1^2", ["x0", "x1", "x2"])
        result = enumerate_projective(F, 1)
        assert result.count == 4
        assert {p.coords for p in result.points} == {
            (1, 0, 0), (0, 0, 1), (1, 1, 1), (1, -1, 1)}

    def test_projective_requires_homogeneous(self):
        with pytest.raises(ValueError):
            enumerate_projective(poly_parse("x - 1", XY), 1)

    def test_keep_points_false(self):
        result = enumerate_affine(poly_parse("x - y", XY), 2, keep_points=False)
        assert result.points is None
        assert result.to_dict()["count"] == 5

    def test_projective_candidates(self):
        """B = 1, n = 2 时首坐标为正的候选个数"""
        assert projective_candidates(2, 1) == 4

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            enumerate_affine(poly_parse("x", XY), 0)


class TestWorkLimit:
    """计算预算"""

    def test_explicit_limit(self):
        with pytest.raises(WorkLimitExceeded) as exc:
            enumerate_affine(poly_parse("x - y", XY), 10, work_limit=100)
        assert exc.value.requested == 441
        assert exc.value.limit == 100

    def test_env_limit(self, monkeypatch):
        monkeypatch.setenv("DGC_WORK_LIMIT", "50")
        with pytest.raises(WorkLimitExceeded):
            enumerate_affine(poly_parse("x - y", XY), 5)

    def test_within_limit(self):
        assert enumerate_affine(poly_parse("x - y", XY), 3, work_limit=49).count == 7


class TestTrivialBounds:

    def test_schwarz_zippel_bound(self):
        assert schwarz_zippel_bound(3, 1, 2) == 15

    def test_schwarz_zippel_holds(self):
        report = check_schwarz_zippel(poly_parse("x^2 + y^2 - 25", XY), 5)
        assert report.holds
        assert report.bound == 22
        assert report.count == 12

    def test_point_off_variety(self):
        """x*y 在原点和坐标轴上为零"""
        pt = find_point_off_variety(poly_parse("x*y", XY), 2)
        assert pt.coords == (1, 1)

    def test_point_off_variety_degree(self):
        with pytest.raises(ValueError):
            find_point_off_variety(poly_parse("x^3", XY), 2)
