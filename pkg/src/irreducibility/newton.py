"""
二元多项式的 Newton 多边形与 Gao 边判据
"""
import logging
from dataclasses import dataclass
from math import gcd, log
from typing import Dict, List, Optional, Tuple

from src.algebra.poly import IntPoly

logger = logging.getLogger(__name__)

Point2 = Tuple[int, int]


@dataclass(frozen=True)
class NewtonPolytope:
    """支撑集凸包：顶点逆时针排列，边为相邻顶点对"""
    vertices: Tuple[Point2, ...]
    edges: Tuple[Tuple[Point2, Point2], ...]

    def has_edge(self, a: Point2, b: Point2) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def to_dict(self) -> Dict:
        return {"vertices": [list(v) for v in self.vertices],
                "edges": [[list(a), list(b)] for a, b in self.edges]}


def _cross(o: Point2, a: Point2, b: Point2) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _require_bivariate(f: IntPoly):
    if f.nvars != 2:
        raise ValueError(f"只支持二元多项式，得到 {f.nvars} 元")


def newton_polytope(f: IntPoly) -> NewtonPolytope:
    """单调链法求凸包（去掉共线点）"""
    _require_bivariate(f)
    if f.is_zero:
        raise ValueError("零多项式没有 Newton 多边形")
    pts = sorted(set(f.support()))
    if len(pts) == 1:
        return NewtonPolytope(vertices=(pts[0],), edges=())
    lower: List[Point2] = []
    for pt in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: List[Point2] = []
    for pt in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return NewtonPolytope(vertices=tuple(hull), edges=((hull[0], hull[1]),))
    edges = tuple((hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
    return NewtonPolytope(vertices=tuple(hull), edges=edges)


def pure_power_degrees(f: IntPoly) -> Tuple[Optional[int], Optional[int]]:
    """(d, d')：纯 x 幂与纯 y 幂的最高次数，不存在时为 None"""
    _require_bivariate(f)
    d = max((e[0] for e in f.support() if e[1] == 0 and e[0] > 0), default=None)
    d_prime = max((e[1] for e in f.support() if e[0] == 0 and e[1] > 0), default=None)
    return d, d_prime


def gao_edge_criterion(f: IntPoly, p: Optional[int] = None) -> bool:
    """
    Gao 边判据（充分条件）

    边 (d,0)-(0,d') 满足 gcd(d, d') = 1，且其余指数 (i, i') 都严格在线段下方
    (i·d' + i'·d < d·d')，则 f 在任何特征下绝对不可约。
    返回 False 只表示判据不适用。
    """
    _require_bivariate(f)
    if p is not None and f.modulus is None:
        f = f.reduce_mod(p)
    if f.is_zero:
        return False
    d, d_prime = pure_power_degrees(f)
    if d is None or d_prime is None or gcd(d, d_prime) != 1:
        return False
    for i, j in f.support():
        if (i, j) in ((d, 0), (0, d_prime)):
            continue
        if i * d_prime + j * d >= d * d_prime:
            return False
    return True


def edge_coefficients(f: IntPoly) -> Optional[Tuple[int, int]]:
    """满足边判据时返回 (c_d, c_d')"""
    if not gao_edge_criterion(f):
        return None
    d, d_prime = pure_power_degrees(f)
    return f.coeff((d, 0)), f.coeff((0, d_prime))


def edge_badness_bound(f: IntPoly) -> Optional[float]:
    """边判据多项式的坏度上界 log|c_d c_d'| + 1；判据不适用时为 None"""
    coeffs = edge_coefficients(f)
    if coeffs is None:
        return None
    return log(abs(coeffs[0] * coeffs[1])) + 1.0
