"""
坏素数与坏度 b(f)

b(f) = ∏ exp(log p / p)，p 取遍 > 27 d^4 且 f mod p 不绝对不可约的素数；
f 本身不绝对不可约时 b(f) = 0。候选素数来自整数 Ruppert 矩阵若干极大非零子式的 gcd：
约化后余秩 ≥ 2 的素数必整除每个 (N−1) 阶子式。
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import exp, gcd, log
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.poly import IntPoly
from src.algebra.linalg import RationalMatrix, integer_det, rref_rational
from src.algebra.primes import prime_factors, primes_in_range
from .ruppert import (
    absolutely_irreducible, reduction_is_absolutely_irreducible, ruppert_matrix,
)

logger = logging.getLogger(__name__)

DEFAULT_MINORS = 3


def badness_threshold(d: int) -> int:
    return 27 * d ** 4


@dataclass(frozen=True)
class BadnessReport:
    """坏素数报告；坏度以素数集合精确保存，浮点值只用于展示"""
    f: IntPoly
    d: int
    threshold: int
    candidate_primes: Tuple[int, ...]
    bad_primes: Tuple[int, ...]
    is_absolutely_irreducible: bool = True
    minors_used: int = 0
    scan_limit: Optional[int] = None
    scan_bad_primes: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not set(self.bad_primes) <= set(self.candidate_primes):
            raise ValueError("坏素数必须是候选素数")
        if any(p <= self.threshold for p in self.bad_primes):
            raise ValueError("坏素数必须大于阈值")

    @property
    def weights(self) -> List[Tuple[int, Fraction]]:
        return [(p, Fraction(1, p)) for p in self.bad_primes]

    @property
    def log_badness(self) -> float:
        if not self.is_absolutely_irreducible:
            return float("-inf")
        return sum(log(p) / p for p in self.bad_primes)

    @property
    def badness(self) -> float:
        if not self.is_absolutely_irreducible:
            return 0.0
        return exp(self.log_badness)

    @property
    def scan_agrees(self) -> Optional[bool]:
        if self.scan_bad_primes is None or self.scan_limit is None:
            return None
        in_range = tuple(p for p in self.bad_primes if p <= self.scan_limit)
        return in_range == self.scan_bad_primes

    def to_dict(self, varnames: Optional[Sequence[str]] = None) -> Dict:
        data = {
            "f": self.f.to_text(varnames),
            "degree": self.d,
            "threshold": self.threshold,
            "absolutely_irreducible": self.is_absolutely_irreducible,
            "candidates": list(self.candidate_primes),
            "bad_primes": list(self.bad_primes),
            "log_badness": None if not self.is_absolutely_irreducible else self.log_badness,
            "badness": self.badness,
        }
        if self.scan_limit is not None:
            data["scan_limit"] = self.scan_limit
            data["scan_bad_primes"] = list(self.scan_bad_primes or ())
            data["scan_agrees"] = self.scan_agrees
        return data


@dataclass(frozen=True)
class BadnessValue:
    """b(f) 的精确表示：(p, 1/p) 权重 + 十进制展示"""
    weights: Tuple[Tuple[int, Fraction], ...]
    log_value: float
    value: float
    is_zero: bool = False


def badness_value(report: BadnessReport) -> BadnessValue:
    if not report.is_absolutely_irreducible:
        return BadnessValue(weights=(), log_value=float("-inf"), value=0.0, is_zero=True)
    return BadnessValue(weights=tuple(report.weights), log_value=report.log_badness,
                        value=report.badness)


def _independent_rows(rows: List[List[int]], columns: Sequence[int],
                      order: Sequence[int]) -> List[int]:
    """按给定顺序挑出限制在 columns 上线性无关的一组行"""
    transposed = RationalMatrix.from_rows(
        [[rows[r][c] for r in order] for c in columns])
    _, pivots = rref_rational(transposed)
    return [order[k] for k in pivots]


def ruppert_minors(f: IntPoly, count: int = DEFAULT_MINORS, seed: int = 0) -> List[int]:
    """
    整数 Ruppert 矩阵的若干非零 (N−1) 阶子式

    列：rref 的主元列（去掉的自由列上核向量非零）。
    行：依次按原顺序、逆序、随机排列挑选无关行。
    """
    rows, columns = ruppert_matrix(f)
    ncols = len(columns)
    _, pivots = rref_rational(RationalMatrix.from_rows(rows))
    if len(pivots) != ncols - 1:
        raise RuntimeError(f"Ruppert 矩阵秩为 {len(pivots)}，应为 {ncols - 1}")
    cols = list(pivots)
    orders = [list(range(len(rows))), list(reversed(range(len(rows))))]
    rng = random.Random(seed)
    while len(orders) < count:
        perm = list(range(len(rows)))
        rng.shuffle(perm)
        orders.append(perm)
    minors: List[int] = []
    seen = set()
    for order in orders[:count]:
        selected = tuple(sorted(_independent_rows(rows, cols, order)))
        if selected in seen:
            continue
        seen.add(selected)
        minor = integer_det([[rows[r][c] for c in cols] for r in selected])
        if minor == 0:
            raise RuntimeError("选出的极大子式为零")
        minors.append(minor)
        if reduce(gcd, minors) == 1:
            break
    return minors


def bad_primes(f: IntPoly, minors: int = DEFAULT_MINORS,
               prime_scan_limit: Optional[int] = None) -> BadnessReport:
    """
    计算 f 的坏素数与 b(f)

    Args:
        f: 二元整系数多项式
        minors: 参与 gcd 的子式个数上限
        prime_scan_limit: 给出时另外逐个检验 (27d^4, limit] 内的素数作交叉验证
    """
    if f.nvars != 2:
        raise ValueError("坏度只对二元多项式计算")
    d = int(f.degree)
    threshold = badness_threshold(d)
    if not absolutely_irreducible(f):
        logger.info(f"{f} 在 Q 上不绝对不可约，b(f) = 0")
        return BadnessReport(f=f, d=d, threshold=threshold, candidate_primes=(),
                             bad_primes=(), is_absolutely_irreducible=False)
    values = ruppert_minors(f, count=minors)
    G = reduce(gcd, (abs(v) for v in values))
    candidates = tuple(prime_factors(G)) if G > 1 else ()
    logger.debug(f"子式 gcd = {G}，候选素数 {candidates}")
    rows, _ = ruppert_matrix(f)
    confirmed = tuple(p for p in candidates
                      if p > threshold and not reduction_is_absolutely_irreducible(f, p, rows))
    scanned = None
    if prime_scan_limit is not None:
        scanned = tuple(scan_bad_primes(f, prime_scan_limit, rows=rows))
    report = BadnessReport(f=f, d=d, threshold=threshold, candidate_primes=candidates,
                           bad_primes=confirmed, minors_used=len(values),
                           scan_limit=prime_scan_limit, scan_bad_primes=scanned)
    if report.scan_agrees is False:
        logger.error(f"⚠️ 子式法 {confirmed} 与逐素数扫描 {scanned} 不一致")
    return report


def scan_bad_primes(f: IntPoly, upper: int, lower: Optional[int] = None,
                    rows: Optional[List[List[int]]] = None) -> List[int]:
    """逐个检验 (lower, upper] 内的素数（lower 缺省为 27d^4）"""
    d = int(f.degree)
    lo = badness_threshold(d) if lower is None else max(lower, badness_threshold(d))
    if rows is None:
        rows, _ = ruppert_matrix(f)
    found = []
    for p in primes_in_range(lo, upper):
        if not reduction_is_absolutely_irreducible(f, p, rows):
            found.append(p)
    logger.info(f"扫描 ({lo}, {upper}] 完成，坏素数 {found}")
    return found


def plane_curve_badness(F: IntPoly, minors: int = DEFAULT_MINORS) -> BadnessReport:
    """
    三元齐次型的坏素数

    取最后一个变量的仿射片 f = F(x, y, 1)；此外 z 在模 p 下成为 F 的因子
    （p 整除 F 中所有不含 z 的项的系数）的大素数也是坏素数。
    """
    if F.nvars != 3 or not F.is_homogeneous():
        raise ValueError("需要三元齐次型")
    d = int(F.degree)
    z_free = [c for e, c in F.terms if e[2] == 0]
    if not z_free:
        return BadnessReport(f=F, d=d, threshold=badness_threshold(d), candidate_primes=(),
                             bad_primes=(), is_absolutely_irreducible=False)
    chart = bad_primes(F.dehomogenize(2), minors=minors)
    threshold = badness_threshold(d)
    if not chart.is_absolutely_irreducible:
        return BadnessReport(f=F, d=d, threshold=threshold, candidate_primes=(),
                             bad_primes=(), is_absolutely_irreducible=False)
    g = reduce(gcd, (abs(c) for c in z_free))
    extra = [p for p in prime_factors(g)] if g > 1 else []
    candidates = tuple(sorted(set(chart.candidate_primes) | set(extra)))
    confirmed = tuple(sorted(set(chart.bad_primes) | {p for p in extra if p > threshold}))
    return BadnessReport(f=F, d=d, threshold=threshold, candidate_primes=candidates,
                         bad_primes=confirmed, minors_used=chart.minors_used)
