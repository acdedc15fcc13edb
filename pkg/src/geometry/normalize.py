"""
首项系数规范化

代换 x_i → x_i + a_i·x_last（0 ≤ a_i ≤ d）后，f′ 的 x_last^d 系数等于 f(a, 1)，
存在 a 使 |f(a, 1)| ≥ 3^{−(n+1)d}‖f‖。
"""
import logging
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Dict, Optional, Tuple

from src.algebra.poly import IntPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Normalization:
    shift: Tuple[int, ...]
    f: IntPoly
    f_shifted: IntPoly
    leading_coeff: int
    lower_bound_holds: bool
    norm_bound_holds: bool

    @property
    def n(self) -> int:
        return self.f.nvars - 2

    def to_dict(self) -> Dict:
        return {"shift": list(self.shift), "f_shifted": self.f_shifted.to_text(),
                "leading_coeff": self.leading_coeff,
                "lower_bound_holds": self.lower_bound_holds,
                "norm_bound_holds": self.norm_bound_holds}


def shifted_polynomial(f: IntPoly, shift: Tuple[int, ...]) -> IntPoly:
    """f(x_0 + a_0 x_last, ..., x_{last−1} + a_{last−1} x_last, x_last)"""
    N = f.nvars
    last = IntPoly.variable(N, N - 1)
    subs = [IntPoly.variable(N, i) + last * a for i, a in enumerate(shift)] + [last]
    return f.compose(subs)


def norm_growth_bound(nvars: int, d: int) -> int:
    """C(n+d+1, n+1)·d^{n+1}，n = nvars − 2"""
    k = nvars - 1
    return comb(k + d, k) * d ** k


def normalize_leading_coeff(f: IntPoly, d: Optional[int] = None) -> Normalization:
    """
    按字典序遍历 a ∈ {0..d}^{N−1}，取第一个同时满足下界与范数界的 a

    范数界对所有候选都不成立时，退回满足下界且 ‖f′‖ 最小的 a（norm_bound_holds=False）。
    """
    if f.is_zero or not f.is_homogeneous():
        raise ValueError("需要非零齐次多项式")
    if f.nvars < 2:
        raise ValueError("至少需要两个变量")
    degree = int(f.degree)
    if d is not None and d != degree:
        raise ValueError(f"给定次数 {d} 与 f 的次数 {degree} 不符")
    N = f.nvars
    norm = f.coeff_norm()
    scale = 3 ** ((N - 1) * degree)
    growth = norm_growth_bound(N, degree) * norm
    fallback: Optional[Normalization] = None
    for shift in product(range(degree + 1), repeat=N - 1):
        lead = f.evaluate(shift + (1,))
        if abs(lead) * scale < norm:
            continue
        shifted = shifted_polynomial(f, shift)
        result = Normalization(shift=shift, f=f, f_shifted=shifted, leading_coeff=lead,
                               lower_bound_holds=True,
                               norm_bound_holds=shifted.coeff_norm() <= growth)
        if result.norm_bound_holds:
            return result
        if fallback is None or shifted.coeff_norm() < fallback.f_shifted.coeff_norm():
            fallback = result
    if fallback is None:
        raise RuntimeError("{0..d}^{n+1} 中没有满足下界的 a，与存在性矛盾")
    logger.warning(f"⚠️ 没有同时满足范数界的平移，退回 a = {fallback.shift}")
    return fallback
