"""
精确线性代数
- 模 p 秩：numpy 行化简（p < 2^31 用 int64，否则退回 Python 整数的 object 数组）
- Q 上零空间 / 秩 / 求解：sympy DomainMatrix 的 rref
- Z 上行列式：DomainMatrix 的 Bareiss 消元
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .poly import require_prime

logger = logging.getLogger(__name__)

INT64_SAFE_PRIME = 2 ** 31


@dataclass(frozen=True)
class PrimePolyMatrix:
    """F_p 上的矩阵，元素为 [0, p) 中的代表元"""
    p: int
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]]) -> "PrimePolyMatrix":
        require_prime(p)
        data = tuple(tuple(int(v) % p for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("各行长度不一致")
        return cls(p, len(data), ncols, data)

    def to_array(self) -> np.ndarray:
        dtype = np.int64 if self.p < INT64_SAFE_PRIME else object
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=dtype)
        return np.array(self.entries, dtype=dtype)


@dataclass(frozen=True)
class RationalMatrix:
    """Q 上的矩阵，元素为最简分数"""
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else (cols or 0)
        if any(len(row) != ncols for row in data):
            raise ValueError("各行长度不一致")
        return cls(len(data), ncols, data)

    def transpose(self) -> "RationalMatrix":
        if self.rows == 0:
            return RationalMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def to_domain_matrix(self) -> DomainMatrix:
        rows = [[QQ(v.numerator, v.denominator) for v in row] for row in self.entries]
        return DomainMatrix(rows, (self.rows, self.cols), QQ)


def _to_fraction(element) -> Fraction:
    value = QQ.to_sympy(element)
    return Fraction(int(value.p), int(value.q))


# ========== 模 p ==========

def rank_mod_p(M: PrimePolyMatrix) -> int:
    """F_p 上的秩（高斯消元）"""
    if M.rows == 0 or M.cols == 0:
        return 0
    A = M.to_array()
    p = M.p
    rank = 0
    for c in range(M.cols):
        if rank == M.rows:
            break
        nonzero = np.nonzero(A[rank:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank] = (A[rank] * inv) % p
        below = A[rank + 1:, c].copy()
        if below.any():
            A[rank + 1:] = (A[rank + 1:] - np.outer(below, A[rank])) % p
        rank += 1
    return rank


def rank_mod_p_rows(rows: Sequence[Sequence[int]], p: int) -> int:
    return rank_mod_p(PrimePolyMatrix.from_rows(p, rows))


# ========== Q 上 ==========

def rref_rational(M: RationalMatrix) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """简化行阶梯形与主元列"""
    if M.rows == 0 or M.cols == 0:
        return [list(row) for row in M.entries], ()
    reduced, pivots = M.to_domain_matrix().rref()
    rows = [[_to_fraction(e) for e in row] for row in reduced.to_list()]
    return rows, tuple(pivots)


def rank_rational(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return int(M.to_domain_matrix().rank())


def primitive_integer_vector(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    """把有理向量放缩为 gcd 为 1 的整数向量"""
    denominators = [Fraction(v).denominator for v in vec]
    lcm = 1
    for d in denominators:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(v) * lcm) for v in vec]
    g = reduce(gcd, (abs(v) for v in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def nullspace_rational(M: RationalMatrix) -> List[Tuple[int, ...]]:
    """
    Q 上右零空间的一组基

    每个自由列给出一个基向量（自由变量取 1，其余自由变量取 0），
    再放缩为 gcd 为 1 的整数向量。基向量按自由列顺序排列。
    """
    if M.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(M.cols)) for j in range(M.cols)]
    rows, pivots = rref_rational(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][f]
        basis.append(primitive_integer_vector(vec))
    logger.debug(f"零空间: {M.rows}x{M.cols}, 维数 {len(basis)}")
    return basis


def solve_rational(M: RationalMatrix, rhs: Sequence) -> Tuple[Fraction, ...]:
    """
    求解方阵方程 M x = rhs（要求唯一解）

    Raises:
        ValueError: 非方阵或奇异
    """
    if M.rows != M.cols or len(rhs) != M.rows:
        raise ValueError("需要方阵且右端长度匹配")
    augmented = RationalMatrix.from_rows(
        [list(row) + [Fraction(b)] for row, b in zip(M.entries, rhs)])
    rows, pivots = rref_rational(augmented)
    if tuple(pivots) != tuple(range(M.cols)):
        raise ValueError("矩阵奇异，解不唯一")
    return tuple(rows[i][M.cols] for i in range(M.rows))


# ========== Z 上 ==========

def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """整数方阵的精确行列式"""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(row) != n for row in rows):
        raise ValueError("行列式需要方阵")
    dm = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (n, n), ZZ)
    return int(dm.det())


def p_adic_valuation(value: int, p: int) -> float:
    """v_p(value)，value = 0 时为 +∞"""
    if value == 0:
        return float("inf")
    value = abs(value)
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k
