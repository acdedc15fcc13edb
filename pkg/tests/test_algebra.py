"""
代数核心测试：多项式、线性代数、素数
"""
from fractions import Fraction

import pytest

from src.algebra.poly import (
    IntPoly, PolySyntaxError, NotPrimeError, poly_parse, poly_print,
    monomials_of_degree, monomials_up_to,
)
from src.algebra.linalg import (
    RationalMatrix, integer_det, nullspace_rational, p_adic_valuation,
    rank_mod_p_rows, rank_rational, solve_rational,
)
from src.algebra.primes import is_prime, prime_factors, primes_in_range, primes_up_to

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


class TestPolyParse:
    """解析与打印"""

    def test_print_glex_order(self):
        """按分级字典序降序打印"""
        f = poly_parse("-25 + x*y + x^3", XY)
        assert poly_print(f, XY) == "x^3 + x*y - 25"

    def test_leading_negative(self):
        """首项为负时不带空格"""
        f = poly_parse("3 - x", XY)
        assert str(f) == "-x + 3"

    def test_parentheses_and_power(self):
        """括号与乘方展开"""
        f = poly_parse("(x + y)^2", XY)
        assert f == poly_parse("x^2 + 2*x*y + y^2", XY)

    def test_unary_minus(self):
        """一元负号"""
        assert poly_parse("-(x - y)", XY) == poly_parse("y - x", XY)

    @pytest.mark.parametrize("text", ["x ", "x + 1  ", " x + 1", "\tx*y\n"])
    def test_whitespace_ignored(self, text):
        """首尾与中间的空白都忽略"""
        expected = poly_parse(text.strip(), XY)
        assert poly_parse(text, XY) == expected

    def test_sympy_round_trip(self):
        """to_sympy / from_sympy 往返不变"""
        f = poly_parse("x^3 - 2*x*y + 7", XY)
        poly = f.to_sympy(f.sympy_gens(XY))
        assert [str(g) for g in poly.gens] == XY
        assert IntPoly.from_sympy(poly) == f

    def test_sympy_factorization(self):
        """sympy 因式分解在默认生成元上可用"""
        f = poly_parse("x^2 - y^2", XY)
        _, factors = f.to_sympy().factor_list()
        assert sorted(IntPoly.from_sympy(g).to_text(XY) for g, _ in factors) == ["x + y", "x - y"]

    def test_implicit_multiplication_rejected(self):
        """隐式乘法报错并给出位置"""
        with pytest.raises(PolySyntaxError) as exc:
            poly_parse("2x", XY)
        assert exc.value.position == 1

    def test_unknown_variable(self):
        """未知变量"""
        with pytest.raises(PolySyntaxError):
            poly_parse("x + w", XY)

    def test_illegal_character(self):
        with pytest.raises(PolySyntaxError):
            poly_parse("x / y", XY)

    def test_zero_prints_as_zero(self):
        assert poly_print(poly_parse("x - x", XY)) == "0"


class TestPolyArithmetic:
    """算术与基本属性"""

    def test_difference_of_squares(self):
        """(x + y)(x - y) = x^2 - y^2"""
        x = IntPoly.variable(2, 0)
        y = IntPoly.variable(2, 1)
        assert (x + y) * (x - y) == poly_parse("x^2 - y^2", XY)

    def test_degree_and_parts(self):
        """次数与齐次部分"""
        f = poly_parse("x^3 + x*y - 25", XY)
        assert f.degree == 3
        assert f.degree_part(2) == poly_parse("x*y", XY)
        assert f.degree_part(3) == poly_parse("x^3", XY)
        assert f.coeff_norm() == 25

    def test_content_and_primitive(self):
        """content 为正，符号留在本原部分"""
        content, prim = poly_parse("-6*x + 4*y", XY).content_and_primitive()
        assert content == 2
        assert prim == poly_parse("-3*x + 2*y", XY)
        assert prim.is_primitive()

    def test_reduce_mod(self):
        """模 p 约化丢弃零系数"""
        f = poly_parse("3*x + 5*y", XY).reduce_mod(5)
        assert f.modulus == 5
        assert f.terms == (((1, 0), 3),)

    def test_reduce_mod_not_prime(self):
        with pytest.raises(NotPrimeError):
            poly_parse("x", XY).reduce_mod(4)

    def test_lift_symmetric(self):
        """对称代表元提升"""
        f = poly_parse("4*x + 1", XY).reduce_mod(5)
        assert f.lift() == poly_parse("-x + 1", XY)

    def test_homogenize_dehomogenize(self):
        f = poly_parse("x^2 + y - 1", XY)
        F = f.homogenize()
        assert F == poly_parse("x^2 + y*z - z^2", XYZ)
        assert F.is_homogeneous()
        assert F.dehomogenize(2) == f

    def test_exact_quotient(self):
        f = poly_parse("x^2 - y^2", XY)
        assert f.exact_quotient(poly_parse("x - y", XY)) == poly_parse("x + y", XY)
        assert f.exact_quotient(poly_parse("x + 2", XY)) is None

    def test_evaluate(self):
        f = poly_parse("x^2 + y^2 - 25", XY)
        assert f.evaluate((3, 4)) == 0
        assert f.evaluator()((1, 1)) == -23

    def test_compose(self):
        """f(x + 1, y)"""
        f = poly_parse("x^2 - y", XY)
        shifted = f.compose([poly_parse("x + 1", XY), poly_parse("y", XY)])
        assert shifted == poly_parse("x^2 + 2*x + 1 - y", XY)

    def test_derivative(self):
        f = poly_parse("x^3 + x*y", XY)
        assert f.derivative(0) == poly_parse("3*x^2 + y", XY)
        assert f.derivative(1) == poly_parse("x", XY)


class TestMonomials:

    def test_monomials_of_degree(self):
        assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]

    def test_monomials_up_to_count(self):
        """C(n+M, n) 个"""
        assert len(monomials_up_to(3, 2)) == 10


class TestLinalg:
    """有理与模 p 线性代数"""

    def test_rank_mod_p(self):
        """det = -2：模 2 降秩，模 5 满秩"""
        rows = [[1, 2], [3, 4]]
        assert rank_mod_p_rows(rows, 2) == 1
        assert rank_mod_p_rows(rows, 5) == 2

    def test_rank_rational(self):
        assert rank_rational(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1

    def test_integer_det(self):
        assert integer_det([[2, 1], [1, 3]]) == 5
        assert integer_det([]) == 1

    def test_nullspace(self):
        """自由变量取 1 的本原整数基"""
        assert nullspace_rational(RationalMatrix.from_rows([[1, 1]])) == [(-1, 1)]

    def test_solve(self):
        M = RationalMatrix.from_rows([[2, 0], [0, 4]])
        assert solve_rational(M, [1, 1]) == (Fraction(1, 2), Fraction(1, 4))

    def test_solve_singular(self):
        M = RationalMatrix.from_rows([[1, 2], [2, 4]])
        with pytest.raises(ValueError):
            solve_rational(M, [1, 1])

    def test_p_adic_valuation(self):
        assert p_adic_valuation(50, 5) == 2
        assert p_adic_valuation(7, 5) == 0
        assert p_adic_valuation(0, 5) == float("inf")


class TestPrimes:

    def test_primes_up_to(self):
        assert primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_primes_in_half_open_range(self):
        """(lo, hi]"""
        assert primes_in_range(5, 13) == [7, 11, 13]
        assert primes_in_range(10, 10) == []

    def test_prime_factors(self):
        assert prime_factors(-360) == [2, 3, 5]
        with pytest.raises(ValueError):
            prime_factors(0)

    def test_is_prime(self):
        assert is_prime(97)
        assert not is_prime(91)
