"""
有界高度点计数（穷举）
N_aff(f, B) 与 N(X, B) 的精确计数；f 可以是单个多项式或多项式组（公共零点）
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.algebra.poly import IntPoly
from src.config import get_settings
from .points import AffinePoint, ProjPoint, vectors_by_norm

logger = logging.getLogger(__name__)

Polys = Union[IntPoly, Sequence[IntPoly]]


class WorkLimitExceeded(RuntimeError):
    """候选点数超过配置的预算"""

    def __init__(self, requested: int, limit: int):
        super().__init__(f"需要扫描 {requested} 个候选点，超过预算 {limit}（可用 DGC_WORK_LIMIT 调整）")
        self.requested = requested
        self.limit = limit


@dataclass(frozen=True)
class CountResult:
    """计数结果"""
    count: int
    bound: int
    mode: str
    points: Optional[Tuple[Any, ...]] = None

    def __post_init__(self):
        if self.points is not None and len(self.points) != self.count:
            raise ValueError("保留的点数与计数不一致")

    def to_dict(self, include_points: bool = True) -> Dict:
        data = {"count": self.count, "bound": self.bound, "mode": self.mode}
        if include_points and self.points is not None:
            data["points"] = [p.to_list() for p in self.points]
        return data


@dataclass(frozen=True)
class SchwarzZippelReport:
    degree: int
    m: int
    bound: int
    count: int
    holds: bool

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "m": self.m, "bound": self.bound,
                "count": self.count, "holds": self.holds}


def _as_system(f: Polys) -> List[IntPoly]:
    polys = [f] if isinstance(f, IntPoly) else list(f)
    if not polys:
        raise ValueError("多项式组为空")
    nvars = polys[0].nvars
    for g in polys:
        if g.nvars != nvars:
            raise ValueError("多项式组的变量个数不一致")
        if g.is_zero:
            raise ValueError("零多项式的零点集是整个空间")
    return polys


def _check_budget(requested: int, work_limit: Optional[int]) -> None:
    limit = work_limit if work_limit is not None else get_settings().work_limit
    if requested > limit:
        raise WorkLimitExceeded(requested, limit)


def _resolve_workers(workers: Optional[int]) -> int:
    return max(1, workers if workers is not None else get_settings().workers)


def _scan_affine_slice(polys: List[IntPoly], B: int, first: int) -> List[Tuple[int, ...]]:
    evaluators = [g.evaluator() for g in polys]
    n = polys[0].nvars
    found = []
    for rest in product(range(-B, B + 1), repeat=n - 1):
        pt = (first,) + rest
        if all(ev(pt) == 0 for ev in evaluators):
            found.append(pt)
    return found


def _scan_projective_slice(polys: List[IntPoly], B: int, lead_index: int,
                           lead_value: int) -> List[Tuple[int, ...]]:
    evaluators = [g.evaluator() for g in polys]
    n = polys[0].nvars
    prefix = (0,) * lead_index + (lead_value,)
    found = []
    for rest in product(range(-B, B + 1), repeat=n - 1 - lead_index):
        pt = prefix + rest
        if gcd(*pt) != 1:
            continue
        if all(ev(pt) == 0 for ev in evaluators):
            found.append(pt)
    return found


def _run_slices(func, tasks: List[tuple], workers: int) -> List[Tuple[int, ...]]:
    if workers <= 1 or len(tasks) <= 1:
        results = [func(*task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(func, *task) for task in tasks]
            results = [fut.result() for fut in futures]
    merged = []
    for chunk in results:
        merged.extend(chunk)
    return merged


def enumerate_affine(f: Polys, B: int, work_limit: Optional[int] = None,
                     keep_points: bool = True, workers: Optional[int] = None) -> CountResult:
    """
    穷举 [-B, B]^n 中的整零点

    Args:
        f: 多项式或多项式组
        B: 盒子半径
        work_limit: 候选点预算，缺省取配置
        keep_points: 是否保留点列表
        workers: 进程数，按第一个坐标切片

    Raises:
        WorkLimitExceeded: (2B+1)^n 超过预算
    """
    polys = _as_system(f)
    if B < 1:
        raise ValueError("B 必须为正整数")
    n = polys[0].nvars
    _check_budget((2 * B + 1) ** n, work_limit)
    tasks = [(polys, B, first) for first in range(-B, B + 1)]
    found = _run_slices(_scan_affine_slice, tasks, _resolve_workers(workers))
    found.sort()
    logger.debug(f"仿射计数: n={n}, B={B}, 找到 {len(found)} 个点")
    points = tuple(AffinePoint(pt) for pt in found) if keep_points else None
    return CountResult(count=len(found), bound=B, mode="affine", points=points)


def projective_candidates(nvars: int, B: int) -> int:
    """规范代表元扫描的候选个数"""
    return sum(B * (2 * B + 1) ** (nvars - 1 - i) for i in range(nvars))


def enumerate_projective(F: Polys, B: int, work_limit: Optional[int] = None,
                         keep_points: bool = True, workers: Optional[int] = None) -> CountResult:
    """
    穷举高度 ≤ B 的射影零点

    直接遍历规范代表元（首个非零坐标为正、gcd 为 1），每个射影点只计一次。
    """
    polys = _as_system(F)
    for g in polys:
        if not g.is_homogeneous():
            raise ValueError("射影计数需要齐次多项式")
    if B < 1:
        raise ValueError("B 必须为正整数")
    n = polys[0].nvars
    _check_budget(projective_candidates(n, B), work_limit)
    tasks = [(polys, B, i, a) for i in range(n) for a in range(1, B + 1)]
    found = _run_slices(_scan_projective_slice, tasks, _resolve_workers(workers))
    found.sort(key=lambda pt: (max(abs(c) for c in pt), pt))
    logger.debug(f"射影计数: n={n}, B={B}, 找到 {len(found)} 个点")
    points = tuple(ProjPoint(pt) for pt in found) if keep_points else None
    return CountResult(count=len(found), bound=B, mode="projective", points=points)


def schwarz_zippel_bound(d: int, m: int, B: int) -> int:
    """d (2B+1)^m"""
    return d * (2 * B + 1) ** m


def check_schwarz_zippel(f: IntPoly, B: int, work_limit: Optional[int] = None) -> SchwarzZippelReport:
    """验证 N_aff(f, B) ≤ d (2B+1)^(n-1)"""
    if f.is_zero:
        raise ValueError("零多项式没有平凡界")
    d = int(f.degree)
    m = f.nvars - 1
    bound = schwarz_zippel_bound(d, m, B)
    count = enumerate_affine(f, B, work_limit=work_limit, keep_points=False).count
    holds = count <= bound
    if not holds:
        logger.error(f"⚠️ 平凡界被违反: {count} > {bound}")
    return SchwarzZippelReport(degree=d, m=m, bound=bound, count=count, holds=holds)


def find_point_off_variety(f: IntPoly, d: int) -> AffinePoint:
    """
    找 |a_i| ≤ d 且 f(a) ≠ 0 的整点

    按范数壳递增搜索；f 非零且次数 ≤ d 时必然存在。
    """
    if f.is_zero:
        raise ValueError("零多项式处处为零")
    if f.degree > d:
        raise ValueError(f"f 的次数 {f.degree} 超过 d = {d}")
    evaluate = f.evaluator()
    for vec in vectors_by_norm(f.nvars, d):
        if evaluate(vec) != 0:
            return AffinePoint(vec)
    raise RuntimeError(f"盒子 [-{d}, {d}]^{f.nvars} 内未找到非零点，与次数界矛盾")
