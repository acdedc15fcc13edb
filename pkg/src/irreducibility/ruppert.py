"""
Ruppert–Gao 微分判据：绝对不可约性检验

对 f ∈ F[x, y]，bidegree (m, n)，求解线性方程组
    f·g_y − g·f_y − f·h_x + h·f_x = 0
其中 deg_x g ≤ m−1, deg_y g ≤ n, deg_x h ≤ m, deg_y h ≤ n−1。
gcd(f, f_x) = 1 且 char F = 0 或 > (2m−1)n 时，解空间维数等于绝对不可约因子个数
(S. Gao, Factoring multivariate polynomials via partial differential equations, 2003)。
"""
import logging
from typing import List, Optional, Tuple

import sympy

from src.algebra.poly import IntPoly
from src.algebra.linalg import RationalMatrix, rank_mod_p_rows, rank_rational

logger = logging.getLogger(__name__)


class NotSquarefreeError(ValueError):
    """输入不是无平方因子的"""


class CharacteristicTooSmall(ValueError):
    """特征不在判据适用范围内"""


def bidegree(f: IntPoly) -> Tuple[int, int]:
    return int(max(f.degree_in(0), 0)), int(max(f.degree_in(1), 0))


def validity_threshold(f: IntPoly) -> int:
    """判据要求 p 严格大于该值"""
    m, n = bidegree(f)
    return max((2 * m - 1) * n, int(f.degree))


def ruppert_matrix(f: IntPoly) -> Tuple[List[List[int]], List[Tuple[str, int, int]]]:
    """
    整数系数矩阵（行 = 像的单项式，列 = 未知量 g_ij / h_ij）

    f 为 F_p 多项式时取对称提升，矩阵模 p 与 F_p 上的系统一致。
    """
    f = f.lift()
    m, n = bidegree(f)
    fx, fy = f.derivative(0), f.derivative(1)
    columns: List[Tuple[str, int, int]] = []
    images: List[IntPoly] = []
    for i in range(m):
        for j in range(n + 1):
            mono = IntPoly.monomial((i, j))
            image = -(mono * fy)
            if j:
                image = image + f * IntPoly.monomial((i, j - 1), j)
            columns.append(("g", i, j))
            images.append(image)
    for i in range(m + 1):
        for j in range(n):
            mono = IntPoly.monomial((i, j))
            image = mono * fx
            if i:
                image = image - f * IntPoly.monomial((i - 1, j), i)
            columns.append(("h", i, j))
            images.append(image)
    row_monomials = sorted({e for image in images for e in image.support()})
    index = {e: r for r, e in enumerate(row_monomials)}
    rows = [[0] * len(columns) for _ in row_monomials]
    for c, image in enumerate(images):
        for e, coeff in image.terms:
            rows[index[e]][c] = coeff
    return rows, columns


def ruppert_corank(f: IntPoly, rows: Optional[List[List[int]]] = None) -> int:
    """解空间维数（F_p 或 Q 上）"""
    if rows is None:
        rows, columns = ruppert_matrix(f)
        ncols = len(columns)
    else:
        ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return 0
    if not rows:
        return ncols
    if f.modulus is not None:
        rank = rank_mod_p_rows(rows, f.modulus)
    else:
        rank = rank_rational(RationalMatrix.from_rows(rows))
    return ncols - rank


def is_squarefree(f: IntPoly) -> bool:
    """gcd(f, f_x, f_y) 为常数"""
    gens = f.sympy_gens()
    g = f.to_sympy(gens)
    for df in f.gradient():
        if df.is_zero:
            continue
        g = g.gcd(df.to_sympy(gens))
        if g.total_degree() == 0:
            return True
    return g.total_degree() == 0


def _check_input(f: IntPoly):
    if f.nvars != 2:
        raise ValueError(f"绝对不可约检验只支持二元多项式，得到 {f.nvars} 元")
    if f.is_zero or f.is_constant():
        raise ValueError("需要非常数多项式")


def absolutely_irreducible(f: IntPoly, p: Optional[int] = None) -> bool:
    """
    f 在代数闭包上是否不可约

    Args:
        f: 二元整系数多项式（或已在 F_p 上）
        p: 给出时在 F_p 上检验

    Raises:
        NotSquarefreeError: gcd(f, ∂f) 非常数
        CharacteristicTooSmall: p ≤ (2m−1)n 或 p ≤ deg f
    """
    if p is not None and f.modulus is None:
        f = f.reduce_mod(p)
    _check_input(f)
    if f.modulus is not None and f.modulus <= validity_threshold(f):
        raise CharacteristicTooSmall(
            f"p = {f.modulus} 不大于判据阈值 {validity_threshold(f)}")
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} 含平方因子")
    corank = ruppert_corank(f)
    logger.debug(f"Ruppert 余秩 {corank}: {f}")
    return corank == 1


def reduction_is_absolutely_irreducible(f: IntPoly, p: int,
                                        rows: Optional[List[List[int]]] = None) -> bool:
    """
    f mod p 是否绝对不可约（不要求无平方因子）

    p 大于阈值时，约化含平方因子或可约都会使余秩 ≥ 2，
    因此只看余秩是否为 1。rows 为 f 的整数矩阵缓存，仅在约化不降 bidegree 时复用。
    """
    fbar = f.reduce_mod(p) if f.modulus is None else f
    if f.nvars != 2:
        raise ValueError("只支持二元多项式")
    if fbar.is_zero or fbar.is_constant():
        return False
    if p <= validity_threshold(fbar):
        raise CharacteristicTooSmall(f"p = {p} 不大于判据阈值 {validity_threshold(fbar)}")
    if rows is not None and bidegree(fbar) != bidegree(f):
        rows = None
    return ruppert_corank(fbar, rows) == 1
