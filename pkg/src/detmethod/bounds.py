"""
理论次数界与素数和估计

公式中的常数 c 由调用方给出（缺省取 DGC_BOUND_CONSTANT），只用于报告比值，从不作断言。
"""
import logging
from dataclasses import dataclass
from math import log
from typing import Dict, Optional

import numpy as np

from src.algebra.primes import sieve_mask
from src.config import get_settings

logger = logging.getLogger(__name__)

CHEBYSHEV_MARGIN = 1e-6


def _constant(c: Optional[float]) -> float:
    return get_settings().bound_constant if c is None else c


def _check_positive(**values):
    for name, value in values.items():
        if value <= 0:
            raise ValueError(f"{name} 必须为正，得到 {value}")


def walsh_degree_formula(n: int, d: int, B: float, norm_fd: float, b_f: float,
                         c: Optional[float] = None) -> float:
    """
    射影情形辅助多项式的次数界

    c B^{(n+1)/(n d^{1/n})} d^{4−1/n} b / ‖f_d‖^{(1/n)(1/d^{1+1/n})} + c d^{1−1/n} log B + c d^{4−1/n}
    """
    _check_positive(n=n, d=d, B=B, norm_fd=norm_fd)
    if b_f < 0:
        raise ValueError("b(f) 不能为负")
    c = _constant(c)
    main = (B ** ((n + 1) / (n * d ** (1 / n))) * d ** (4 - 1 / n) * b_f
            / norm_fd ** ((1 / n) * (1 / d ** (1 + 1 / n))))
    return c * main + c * d ** (1 - 1 / n) * log(B) + c * d ** (4 - 1 / n)


def affine_degree_formula(n: int, d: int, B: float, norm_fd: float, b_f: float,
                          c: Optional[float] = None) -> float:
    """
    仿射情形

    c B^{1/d^{1/n}} d^{2−1/n} min(log‖f_d‖ + d log B + d², d² b) / ‖f_d‖^{1/(n d^{1+1/n})}
    + c d^{1−1/n} log B + c d^{4−1/n}
    """
    _check_positive(n=n, d=d, B=B, norm_fd=norm_fd)
    c = _constant(c)
    inner = min(log(norm_fd) + d * log(B) + d ** 2, d ** 2 * b_f)
    main = (B ** (1 / d ** (1 / n)) * d ** (2 - 1 / n) * inner
            / norm_fd ** (1 / (n * d ** (1 + 1 / n))))
    return c * main + c * d ** (1 - 1 / n) * log(B) + c * d ** (4 - 1 / n)


def affine_count_shape(d: int, B: float, norm_fd: float, b_f: float,
                       c: Optional[float] = None) -> float:
    """平面仿射曲线计数：c B^{1/d} min(d² log‖f_d‖ + d³ log B + d⁴, d⁴ b)/‖f_d‖^{1/d²} + c d log B + c d⁴"""
    _check_positive(d=d, B=B, norm_fd=norm_fd)
    c = _constant(c)
    inner = min(d ** 2 * log(norm_fd) + d ** 3 * log(B) + d ** 4, d ** 4 * b_f)
    return c * B ** (1 / d) * inner / norm_fd ** (1 / d ** 2) + c * d * log(B) + c * d ** 4


def edge_count_shape(d: int, B: float, c_d: int, c_dp: int, c: Optional[float] = None) -> float:
    """c d⁴ (log|c_d c_d'| + 1) B^{1/d}"""
    _check_positive(d=d, B=B)
    if c_d == 0 or c_dp == 0:
        raise ValueError("边系数不能为零")
    return _constant(c) * d ** 4 * (log(abs(c_d * c_dp)) + 1) * B ** (1 / d)


def projective_curve_shape(d: int, B: float) -> float:
    """d⁴ B^{2/d}"""
    return d ** 4 * B ** (2 / d)


def affine_curve_shape(d: int, B: float) -> float:
    """d³ B^{1/d} (log B + d)"""
    return d ** 3 * B ** (1 / d) * (log(B) + d)


# ========== 素数和 ==========

@dataclass(frozen=True)
class ChebyshevReport:
    x: int
    theta: float
    bound: float
    holds: bool
    checked_upto: int = 0
    first_failure: Optional[int] = None

    def to_dict(self) -> Dict:
        return {"x": self.x, "theta": self.theta, "bound": self.bound, "holds": self.holds,
                "checked_upto": self.checked_upto, "first_failure": self.first_failure}


def _theta_table(x: int) -> np.ndarray:
    """theta[k] = Σ_{p ≤ k} log p，k = 0..x"""
    mask = sieve_mask(x)
    logs = np.zeros(x + 1, dtype=np.float64)
    idx = np.nonzero(mask)[0]
    logs[idx] = np.log(idx.astype(np.float64))
    return np.cumsum(logs)


def chebyshev_check(x: int) -> ChebyshevReport:
    """
    θ(y) + 10⁻⁶·y ≤ 2y 对全部 1 ≤ y ≤ x 成立（一次筛）

    报告中的 theta 与 bound 取 y = x 处的值。
    """
    if x < 1:
        raise ValueError("x 必须 ≥ 1")
    theta = _theta_table(x)
    ys = np.arange(x + 1, dtype=np.float64)
    ok = theta[1:] + CHEBYSHEV_MARGIN * ys[1:] <= 2 * ys[1:]
    failures = np.nonzero(~ok)[0]
    first = int(failures[0]) + 1 if failures.size else None
    holds = first is None
    if not holds:
        logger.error(f"⚠️ θ({first}) 超过 2·{first}")
    return ChebyshevReport(x=x, theta=float(theta[x]), bound=2.0 * x, holds=holds,
                           checked_upto=x, first_failure=first)


@dataclass(frozen=True)
class MertensReport:
    x: int
    prime_sum: float
    log_x: float

    @property
    def remainder(self) -> float:
        return self.prime_sum - self.log_x

    def to_dict(self) -> Dict:
        return {"x": self.x, "sum_log_p_over_p": self.prime_sum, "log_x": self.log_x,
                "remainder": self.remainder}


def mertens_report(x: int) -> MertensReport:
    """Σ_{p≤x} log p / p − log x"""
    if x < 2:
        raise ValueError("x 必须 ≥ 2")
    idx = np.nonzero(sieve_mask(x))[0].astype(np.float64)
    total = float(np.sum(np.log(idx) / idx))
    return MertensReport(x=x, prime_sum=total, log_x=log(x))
