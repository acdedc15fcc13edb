"""
线性代数几何工具：Plücker 坐标与小整数解
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd, isqrt
from functools import reduce
from typing import List, Sequence, Tuple

from src.algebra.linalg import RationalMatrix, integer_det, rank_rational, rref_rational
from src.pointcount.points import vectors_by_norm

logger = logging.getLogger(__name__)


def pluecker(points: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    全部极大子式（列组合按字典序），约去 gcd 并使首个非零分量为正

    Raises:
        ValueError: 点线性相关
    """
    rows = [tuple(int(c) for c in P) for P in points]
    if not rows:
        raise ValueError("至少需要一个点")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("点的维数不一致")
    k = len(rows)
    if k > width:
        raise ValueError("点数超过坐标个数，必然线性相关")
    minors = [integer_det([[r[c] for c in cols] for r in rows])
              for cols in combinations(range(width), k)]
    if not any(minors):
        raise ValueError("点线性相关")
    g = reduce(gcd, (abs(m) for m in minors))
    lead = next(m for m in minors if m)
    sign = 1 if lead > 0 else -1
    return tuple(sign * m // g for m in minors)


@dataclass(frozen=True)
class LinearSystem:
    """s 个方程 r 个未知量的齐次整系数方程组，行线性无关"""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("方程组为空")
        r = len(self.rows[0])
        if any(len(row) != r for row in self.rows):
            raise ValueError("各方程长度不一致")
        if self.s >= r:
            raise ValueError(f"需要 r > s，得到 r={r}, s={self.s}")
        if rank_rational(RationalMatrix.from_rows(self.rows)) != self.s:
            raise ValueError("方程线性相关")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "LinearSystem":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def s(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0])

    @property
    def B(self) -> int:
        return max(abs(v) for row in self.rows for v in row)

    def solution_bound(self) -> int:
        """⌊√((s−1)!·r)·B^{s−1}⌋"""
        return isqrt(factorial(self.s - 1) * self.r * self.B ** (2 * (self.s - 1)))


def _apply(row: Sequence[int], x: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(row, x))


def small_violating_solution(system: LinearSystem) -> Tuple[int, ...]:
    """
    满足第 2..s 个方程、违反第 1 个方程的小整数解

    用第 2..s 个方程的 rref 把主元变量表示为自由变量的有理组合，
    自由变量按范数壳递增枚举，主元变量须为整数且落在界内。
    """
    bound = system.solution_bound()
    first, rest = system.rows[0], system.rows[1:]
    r = system.r
    if rest:
        reduced, pivots = rref_rational(RationalMatrix.from_rows(rest))
    else:
        reduced, pivots = [], ()
    free = [j for j in range(r) if j not in set(pivots)]
    for values in vectors_by_norm(len(free), bound):
        if not any(values):
            continue
        x: List[Fraction] = [Fraction(0)] * r
        for j, v in zip(free, values):
            x[j] = Fraction(v)
        for row, pc in zip(reduced, pivots):
            x[pc] = -sum(row[j] * x[j] for j in free)
        if any(v.denominator != 1 or abs(v) > bound for v in x):
            continue
        candidate = tuple(int(v) for v in x)
        if _apply(first, candidate) == 0:
            continue
        if any(_apply(row, candidate) != 0 for row in rest):
            raise RuntimeError("rref 回代结果不满足方程")
        return candidate
    raise RuntimeError(f"界 {bound} 内不存在违反首个方程的解，与小解存在性矛盾")
