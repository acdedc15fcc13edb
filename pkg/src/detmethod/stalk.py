"""
局部环的 Hilbert 函数与权重序列

X_p 在重数 μ 的点处：g(0) = 1，0 < k < μ 时 g(k) = C(n+k, n)，
k ≥ μ 时 g(k) = C(n+k, n) − C(n+k−μ, n)。权重序列中整数 m 恰好出现 g(m) 次，
A(s) 为前 s 项之和，即 s×s 插值行列式保证的 p-进赋值。
"""
import logging
from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, Iterator, List

from src.algebra.poly import IntPoly, monomials_of_degree
from src.algebra.linalg import RationalMatrix, rank_rational

logger = logging.getLogger(__name__)


def _check_params(n: int, mu: int):
    if n < 1:
        raise ValueError(f"n 必须 ≥ 1，得到 {n}")
    if mu < 1:
        raise ValueError(f"μ 必须 ≥ 1，得到 {mu}")


def stalk_hilbert(n: int, mu: int, k: int) -> int:
    _check_params(n, mu)
    if k < 0:
        raise ValueError("k 必须非负")
    if k == 0:
        return 1
    if k < mu:
        return comb(n + k, n)
    return comb(n + k, n) - comb(n + k - mu, n)


def tangent_cone_hilbert(n: int, mu: int, k: int) -> int:
    """
    独立的维数计数：n+1 元中 k 次单项式个数减去 F·(k−μ 次单项式) 张成空间的秩，
    F = Σ x_i^μ。秩由精确线性代数给出，不用组合公式。
    """
    _check_params(n, mu)
    nvars = n + 1
    degree_k = monomials_of_degree(nvars, k)
    if k < mu:
        return len(degree_k)
    F = IntPoly.from_dict(nvars, {tuple(mu if j == i else 0 for j in range(nvars)): 1
                                  for i in range(nvars)})
    index = {e: c for c, e in enumerate(degree_k)}
    rows = []
    for e in monomials_of_degree(nvars, k - mu):
        row = [0] * len(degree_k)
        for term, coeff in (F * IntPoly.monomial(e)).terms:
            row[index[term]] = coeff
        rows.append(row)
    return len(degree_k) - rank_rational(RationalMatrix.from_rows(rows, cols=len(degree_k)))


def iter_weights(n: int, mu: int) -> Iterator[int]:
    """n_1, n_2, ...：m 重复 g(m) 次"""
    m = 0
    while True:
        for _ in range(stalk_hilbert(n, mu, m)):
            yield m
        m += 1


def weight_sequence(n: int, mu: int, s: int) -> List[int]:
    if s < 0:
        raise ValueError("s 必须非负")
    out: List[int] = []
    for w in iter_weights(n, mu):
        if len(out) >= s:
            break
        out.append(w)
    return out


def main_term(n: int, mu: int, s: int) -> float:
    """(n!/μ)^{1/n} · n/(n+1) · s^{1+1/n}"""
    return (factorial(n) / mu) ** (1 / n) * (n / (n + 1)) * s ** (1 + 1 / n)


@dataclass(frozen=True)
class WeightReport:
    n: int
    mu: int
    s: int
    partial_sum: int
    main_term: float

    @property
    def defect(self) -> float:
        return self.main_term - self.partial_sum

    @property
    def normalized_defect(self) -> float:
        return self.defect / self.s if self.s else 0.0

    def to_dict(self) -> Dict:
        return {"n": self.n, "mu": self.mu, "s": self.s, "A": self.partial_sum,
                "main_term": self.main_term, "defect": self.defect,
                "normalized_defect": self.normalized_defect}


def weight_partial_sum(n: int, mu: int, s: int) -> WeightReport:
    """A(s) 精确值与主项的比较"""
    if s < 1:
        raise ValueError("s 必须 ≥ 1")
    _check_params(n, mu)
    total = sum(weight_sequence(n, mu, s))
    return WeightReport(n=n, mu=mu, s=s, partial_sum=total, main_term=main_term(n, mu, s))


@dataclass(frozen=True)
class StalkProfile:
    """重数 μ 点处的组合数据 (μ, g, n_i, A)"""
    n: int
    mu: int

    def __post_init__(self):
        _check_params(self.n, self.mu)

    def hilbert(self, k: int) -> int:
        return stalk_hilbert(self.n, self.mu, k)

    def weights(self, s: int) -> List[int]:
        return weight_sequence(self.n, self.mu, s)

    def partial_sum(self, s: int) -> int:
        if s <= 0:
            return 0
        return sum(self.weights(s))

    def max_normalized_defect(self, s_max: int) -> float:
        """max_{s ≤ s_max} (主项 − A(s))/s，一次展开权重序列"""
        best = float("-inf")
        total = 0
        for s, w in enumerate(iter_weights(self.n, self.mu), start=1):
            if s > s_max:
                break
            total += w
            best = max(best, (main_term(self.n, self.mu, s) - total) / s)
        return best

    def to_dict(self, s: int = 10) -> Dict:
        weights = self.weights(s)
        partial, total = [], 0
        for w in weights:
            total += w
            partial.append(total)
        return {"n": self.n, "mu": self.mu,
                "hilbert": [self.hilbert(k) for k in range(max(weights, default=0) + 1)],
                "weights": weights, "partial_sums": partial}
