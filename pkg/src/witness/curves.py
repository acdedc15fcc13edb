"""
下界见证曲线

f = x_1^d + … + x_{n−1}^d + x_n^{d−1} + Σ a_e x^e，e ∈ [0, K]^n，K = ⌊(d−1)/n⌋。
a_e 由网格 [h−K, h]^n（h = ⌊(d−1)/(2n)⌋）上的消失条件唯一确定：
系数矩阵是 Vandermonde 矩阵 (r^i) 的 n 次 Kronecker 幂。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, log
from functools import reduce
from typing import Dict, List, Optional, Tuple

from src.algebra.poly import IntPoly, Monomial
from src.algebra.linalg import RationalMatrix, integer_det, solve_rational
from src.irreducibility.newton import gao_edge_criterion
from src.pointcount import enumerate_affine, enumerate_projective

logger = logging.getLogger(__name__)


def witness_height(d: int) -> int:
    """B = ⌊(d−1)/2⌋ − ⌊(d−1)/4⌋；d ≤ 2 时取 1"""
    if d <= 2:
        return 1
    return (d - 1) // 2 - (d - 1) // 4


@dataclass(frozen=True)
class WitnessCurve:
    d: int
    n: int
    f: IntPoly
    grid_radius: int
    B: int
    claimed_count: int
    grid: Tuple[int, ...] = ()
    solution: Tuple[Tuple[Monomial, Fraction], ...] = field(default=(), compare=False)
    edge_certified: Optional[bool] = None

    @property
    def exponent_cap(self) -> int:
        return (self.d - 1) // self.n

    def to_dict(self) -> Dict:
        return {
            "d": self.d, "n": self.n, "f": self.f.to_text(), "grid_radius": self.grid_radius,
            "grid": list(self.grid), "B": self.B, "claimed_count": self.claimed_count,
            "edge_certified": self.edge_certified,
            "solution": {"*".join(map(str, e)): str(c) for e, c in self.solution},
        }


def _structural_part(d: int, n: int) -> IntPoly:
    mapping = {}
    for i in range(n - 1):
        mapping[tuple(d if j == i else 0 for j in range(n))] = 1
    last = tuple(d - 1 if j == n - 1 else 0 for j in range(n))
    mapping[last] = mapping.get(last, 0) + 1
    return IntPoly.from_dict(n, mapping)


def kronecker_vandermonde(grid: Tuple[int, ...], K: int, n: int) -> Tuple[List[Monomial], List[Tuple[int, ...]], List[List[int]]]:
    """行 = 网格点，列 = 指数 e ∈ [0, K]^n，元素 r^e"""
    exponents = list(product(range(K + 1), repeat=n))
    points = list(product(grid, repeat=n))
    rows = []
    for r in points:
        row = []
        for e in exponents:
            value = 1
            for ri, ei in zip(r, e):
                value *= ri ** ei
            row.append(value)
        rows.append(row)
    return exponents, points, rows


def build_witness(d: int, n: int = 2) -> WitnessCurve:
    """
    构造在整网格上消失的 d 次曲线（超曲面）

    d = 1, 2 时结果分别是 x 与 x² + y（过坐标点的直线与圆锥曲线）。
    """
    if d < 1 or n < 2:
        raise ValueError(f"需要 d ≥ 1 且 n ≥ 2，得到 d={d}, n={n}")
    K = (d - 1) // n
    h = (d - 1) // (2 * n)
    grid = tuple(range(h - K, h + 1))
    structural = _structural_part(d, n)
    exponents, points, rows = kronecker_vandermonde(grid, K, n)
    rhs = [-structural.evaluate(r) for r in points]
    solution = solve_rational(RationalMatrix.from_rows(rows), rhs)
    denominators = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in solution), 1)
    mapping: Dict[Monomial, int] = {e: c * denominators for e, c in structural.terms}
    for e, c in zip(exponents, solution):
        mapping[e] = mapping.get(e, 0) + int(c * denominators)
    _, f = IntPoly.from_dict(n, mapping).content_and_primitive()
    evaluate = f.evaluator()
    for r in points:
        if evaluate(r) != 0:
            raise RuntimeError(f"见证曲线在网格点 {r} 处不为零")
    edge = gao_edge_criterion(f) if n == 2 else None
    if n == 2 and d >= 2 and not edge:
        raise RuntimeError(f"d={d} 的见证曲线不满足边判据")
    logger.debug(f"✓ 见证曲线 d={d}, n={n}: {f}")
    return WitnessCurve(
        d=d, n=n, f=f, grid_radius=h, B=witness_height(d), claimed_count=len(points),
        grid=grid, solution=tuple(zip(exponents, solution)), edge_certified=edge,
    )


def verify_grid(w: WitnessCurve) -> bool:
    evaluate = w.f.evaluator()
    return all(evaluate(r) == 0 for r in product(w.grid, repeat=w.n))


@dataclass(frozen=True)
class DeterminantCheck:
    det: int
    vandermonde_det: int
    exponent: int
    matches: bool

    def to_dict(self) -> Dict:
        return {"det": str(self.det), "vandermonde_det": self.vandermonde_det,
                "exponent": self.exponent, "matches": self.matches}


def kronecker_vandermonde_det_check(w: WitnessCurve) -> DeterminantCheck:
    """|det(V^{⊗n})| = |det V|^{n·k^{n−1}}，k = K + 1"""
    K = w.exponent_cap
    _, _, rows = kronecker_vandermonde(w.grid, K, w.n)
    det = integer_det(rows)
    v_det = integer_det([[r ** i for i in range(K + 1)] for r in w.grid])
    exponent = w.n * (K + 1) ** (w.n - 1)
    matches = det != 0 and abs(det) == abs(v_det) ** exponent
    return DeterminantCheck(det=det, vandermonde_det=v_det, exponent=exponent, matches=matches)


# ========== 下界验证 ==========

@dataclass(frozen=True)
class LowerBoundReport:
    d: int
    B: int
    mode: str
    count: int
    required: float
    holds: bool
    grid_floor: Optional[int] = None

    def to_dict(self) -> Dict:
        return {"d": self.d, "B": self.B, "mode": self.mode, "count": self.count,
                "required": self.required, "grid_floor": self.grid_floor, "holds": self.holds}


def verify_projective_lower_bound(w: WitnessCurve, work_limit: Optional[int] = None) -> LowerBoundReport:
    """N(X, B) ≥ d² B^{2/d} / 5，d ≥ 3 时另有 N(X, B) ≥ (⌊(d−1)/2⌋+1)² + 1（整数比较）"""
    if w.n != 2:
        raise ValueError("射影下界只对 n = 2 验证")
    F = w.f.homogenize()
    count = enumerate_projective(F, w.B, work_limit=work_limit, keep_points=False).count
    d, B = w.d, w.B
    holds = (5 * count) ** d >= d ** (2 * d) * B ** 2
    floor = None
    if d >= 3:
        floor = ((d - 1) // 2 + 1) ** 2 + 1
        holds = holds and count >= floor
    if not holds:
        logger.error(f"⚠️ d={d}: N(X, {B}) = {count} 低于下界")
    return LowerBoundReport(d=d, B=B, mode="projective", count=count,
                            required=d ** 2 * B ** (2 / d) / 5, holds=holds, grid_floor=floor)


def verify_affine_lower_bound(w: WitnessCurve, work_limit: Optional[int] = None) -> LowerBoundReport:
    """N_aff(f, B) ≥ d² B^{1/d} log B / (4 log d)"""
    if w.n != 2 or w.d < 3:
        raise ValueError("仿射下界需要 n = 2 且 d ≥ 3")
    count = enumerate_affine(w.f, w.B, work_limit=work_limit, keep_points=False).count
    d, B = w.d, w.B
    required = d ** 2 * B ** (1 / d) * log(B) / (4 * log(d))
    holds = count >= required and count >= ((d - 1) // 2 + 1) ** 2
    return LowerBoundReport(d=d, B=B, mode="affine", count=count, required=required,
                            holds=holds, grid_floor=((d - 1) // 2 + 1) ** 2)


@dataclass(frozen=True)
class HigherSpotCheck:
    d: int
    n: int
    B: int
    count: int
    ratio: float

    def to_dict(self) -> Dict:
        return {"d": self.d, "n": self.n, "B": self.B, "count": self.count, "ratio": self.ratio}


def spot_check_higher(w: WitnessCurve, B: int, work_limit: Optional[int] = None) -> HigherSpotCheck:
    """n = 3：N(X, B) 与 d² B^{n−2} 的比值（只报告，不断言常数）"""
    if w.n != 3:
        raise ValueError("只对 n = 3 做抽查")
    if w.d > 4:
        raise ValueError("n = 3 的抽查限于 d ≤ 4")
    count = enumerate_projective(w.f.homogenize(), B, work_limit=work_limit, keep_points=False).count
    ratio = count / (w.d ** 2 * B ** (w.n - 2))
    return HigherSpotCheck(d=w.d, n=w.n, B=B, count=count, ratio=ratio)
