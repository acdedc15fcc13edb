"""
p-进行列式整除性

对同余到同一 F_p 点 P 的 s 个整点 ξ_j 与 s 个同次形式 F_i，
Δ = det(F_i(ξ_j)) 被 p^{A(s)} 整除，A 由 P 处的重数 μ 决定。
"""
import json
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.algebra.poly import IntPoly, default_varnames, monomials_of_degree, parse_varnames, poly_parse
from src.algebra.linalg import RationalMatrix, integer_det, nullspace_rational, p_adic_valuation
from src.algebra.poly import require_prime
from src.config import get_settings
from src.pointcount import ProjPoint, WorkLimitExceeded
from src.irreducibility.ruppert import reduction_is_absolutely_irreducible, validity_threshold
from .stalk import StalkProfile

logger = logging.getLogger(__name__)


class InstanceError(ValueError):
    """行列式实例不满足前提"""


# ========== 重数 ==========

def _same_reduction(P: Sequence[int], Q: Sequence[int], p: int) -> bool:
    """两个本原点模 p 是否为同一射影点（全部 2×2 子式 ≡ 0）"""
    n = len(P)
    return all((P[i] * Q[j] - P[j] * Q[i]) % p == 0 for i in range(n) for j in range(i + 1, n))


def multiplicity(F: IntPoly, P: Sequence[int], p: int) -> int:
    """
    F mod p 在 P mod p 处的重数（切锥次数）

    在第一个模 p 非零的坐标处去齐次化，把点平移到原点，取最低次非零齐次部分的次数。
    P 不在 F mod p 上时返回 0。
    """
    require_prime(p)
    if len(P) != F.nvars:
        raise InstanceError(f"点的维数 {len(P)} 与变量个数 {F.nvars} 不符")
    Fbar = F.reduce_mod(p) if F.modulus is None else F
    if Fbar.is_zero:
        raise InstanceError(f"F 模 {p} 为零")
    chart = next((i for i, c in enumerate(P) if c % p), None)
    if chart is None:
        raise InstanceError(f"点 {tuple(P)} 模 {p} 为零向量")
    inv = pow(int(P[chart]) % p, -1, p)
    affine = [(int(c) * inv) % p for i, c in enumerate(P) if i != chart]
    local = Fbar.dehomogenize(chart)
    if local.is_zero:
        raise InstanceError(f"F 在坐标 {chart} 的仿射片上模 {p} 为零")
    m = local.nvars
    subs = [IntPoly.variable(m, j, p) + a for j, a in enumerate(affine)]
    shifted = local.compose(subs)
    if shifted.is_zero:
        raise InstanceError("平移后的局部方程为零")
    return min(sum(e) for e in shifted.support())


# ========== 实例 ==========

@dataclass(frozen=True)
class DeterminantInstance:
    """
    插值行列式实例

    points 与 monomials 个数相同；monomials 为同次形式，行 i 列 j 的元素为 F_i(ξ_j)。
    """
    p: int
    f: IntPoly
    points: Tuple[ProjPoint, ...]
    monomials: Tuple[IntPoly, ...]
    varnames: Tuple[str, ...] = field(default=())

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        """X 为 P^{n+1} 中的超曲面"""
        return self.f.nvars - 2

    def matrix(self) -> List[List[int]]:
        evaluators = [F.evaluator() for F in self.monomials]
        return [[ev(P.coords) for P in self.points] for ev in evaluators]

    @cached_property
    def det_value(self) -> int:
        return integer_det(self.matrix())

    def validate(self) -> None:
        require_prime(self.p)
        if self.f.nvars < 3:
            raise InstanceError("需要至少三个齐次坐标")
        if not self.f.is_homogeneous() or self.f.is_zero:
            raise InstanceError("f 必须是非零齐次多项式")
        if self.s == 0 or self.s != len(self.monomials):
            raise InstanceError(f"点数 {self.s} 与形式个数 {len(self.monomials)} 必须相同且为正")
        degrees = set()
        for F in self.monomials:
            if F.nvars != self.f.nvars or F.is_zero or not F.is_homogeneous():
                raise InstanceError(f"形式 {F} 不是同一环中的非零齐次多项式")
            degrees.add(F.degree)
        if len(degrees) != 1:
            raise InstanceError(f"形式的次数不一致: {sorted(degrees)}")
        evaluate = self.f.evaluator()
        for P in self.points:
            if len(P) != self.f.nvars:
                raise InstanceError(f"点 {P.coords} 的维数不对")
            if evaluate(P.coords) != 0:
                raise InstanceError(f"点 {P.coords} 不在 f = 0 上")
        first = self.points[0].coords
        for P in self.points[1:]:
            if not _same_reduction(first, P.coords, self.p):
                raise InstanceError(f"点 {P.coords} 与 {first} 模 {self.p} 不同余")

    def to_dict(self) -> Dict:
        names = list(self.varnames) or default_varnames(self.f.nvars)
        return {
            "p": self.p,
            "vars": ",".join(names),
            "f": self.f.to_text(names),
            "points": [P.to_list() for P in self.points],
            "monomials": [F.to_text(names) for F in self.monomials],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "DeterminantInstance":
        try:
            names = parse_varnames(data["vars"])
            f = poly_parse(data["f"], names)
            points = tuple(ProjPoint.canonical(pt) for pt in data["points"])
            monomials = tuple(poly_parse(text, names) for text in data["monomials"])
            p = int(data["p"])
        except KeyError as e:
            raise InstanceError(f"实例缺少字段 {e}")
        return cls(p=p, f=f, points=points, monomials=monomials, varnames=tuple(names))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DeterminantInstance":
        path = Path(path)
        if not path.exists():
            raise InstanceError(f"实例文件不存在: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InstanceError(f"实例文件不是合法 JSON: {e}")
        return cls.from_dict(data)


@dataclass(frozen=True)
class PadicReport:
    p: int
    s: int
    n: int
    mu: int
    det_value: int
    valuation: float
    required: int
    passed: bool

    def to_dict(self) -> Dict:
        return {
            "p": self.p, "s": self.s, "n": self.n, "mu": self.mu,
            "det": str(self.det_value),
            "valuation": None if self.valuation == float("inf") else int(self.valuation),
            "required": self.required, "passed": self.passed,
        }


def verify_padic_divisibility(inst: DeterminantInstance) -> PadicReport:
    """v_p(Δ) ≥ A(s)；Δ = 0 视为通过"""
    inst.validate()
    mu = multiplicity(inst.f, inst.points[0].coords, inst.p)
    if mu < 1:
        raise InstanceError("公共约化点不在 f mod p 上")
    required = StalkProfile(inst.n, mu).partial_sum(inst.s)
    delta = inst.det_value
    valuation = p_adic_valuation(delta, inst.p)
    passed = valuation >= required
    if passed:
        logger.debug(f"✓ p={inst.p}, s={inst.s}, μ={mu}: v_p(Δ)={valuation} ≥ A(s)={required}")
    else:
        logger.error(f"⚠️ p={inst.p}, s={inst.s}, μ={mu}: v_p(Δ)={valuation} < A(s)={required}")
    return PadicReport(p=inst.p, s=inst.s, n=inst.n, mu=mu, det_value=delta,
                       valuation=valuation, required=required, passed=passed)


# ========== 随机实例 ==========

def _random_primitive(rng: random.Random, nvars: int, radius: int) -> Tuple[int, ...]:
    while True:
        vec = tuple(rng.randint(-radius, radius) for _ in range(nvars))
        if any(vec):
            return ProjPoint.canonical(vec).coords


def _curve_through(points: Sequence[ProjPoint], nvars: int) -> IntPoly:
    """过全部点的最低次（≥ 2）形式，取零空间第一个基向量"""
    D = 2
    while comb(D + nvars - 1, nvars - 1) <= len(points):
        D += 1
    monos = monomials_of_degree(nvars, D)
    rows = [[IntPoly.monomial(e).evaluate(P.coords) for e in monos] for P in points]
    basis = nullspace_rational(RationalMatrix.from_rows(rows, cols=len(monos)))
    vec = basis[0]
    return IntPoly.from_dict(nvars, {e: c for e, c in zip(monos, vec)})


def random_determinant_instance(rng: random.Random, p: int, s: int,
                                nvars: int = 3, radius: int = 3) -> DeterminantInstance:
    """
    随机生成合法实例

    ξ_1 随机本原，ξ_j = ξ_1 + p·w_j 取规范代表元（gcd 与 p 互素，模 p 仍同余），
    曲线取过这些点的二次（或更高次）形式，形式取随机的同次单项式。
    """
    require_prime(p)
    if s < 1:
        raise ValueError("s 必须为正")
    base = _random_primitive(rng, nvars, radius)
    points: List[ProjPoint] = [ProjPoint(base)]
    seen = {base}
    while len(points) < s:
        w = [rng.randint(-radius, radius) for _ in range(nvars)]
        candidate = ProjPoint.canonical([b + p * c for b, c in zip(base, w)])
        if candidate.coords in seen:
            continue
        seen.add(candidate.coords)
        points.append(candidate)
    f = _curve_through(points, nvars)
    degree = 1
    while comb(degree + nvars - 1, nvars - 1) < s:
        degree += 1
    degree += rng.randint(0, 1)
    chosen = rng.sample(monomials_of_degree(nvars, degree), s)
    monomials = tuple(IntPoly.monomial(e) for e in chosen)
    return DeterminantInstance(p=p, f=f, points=tuple(points), monomials=monomials)


# ========== 约化统计 ==========

@dataclass(frozen=True)
class ReductionStats:
    p: int
    n_p: int
    point_count: int
    geometrically_integral: Optional[bool]
    singular_points: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n_p < self.point_count:
            raise ValueError("带重数的点数不能少于点数")

    def to_dict(self) -> Dict:
        return {"p": self.p, "n_p": self.n_p, "point_count": self.point_count,
                "geometrically_integral": self.geometrically_integral,
                "singular_points": [list(P) for P in self.singular_points]}


def _projective_points_mod_p(p: int):
    for a in range(p):
        for b in range(p):
            yield (1, a, b)
    for b in range(p):
        yield (0, 1, b)
    yield (0, 0, 1)


def _reduction_integral(F: IntPoly, p: int) -> Optional[bool]:
    Fbar = F.reduce_mod(p)
    chart = Fbar.dehomogenize(2)
    if Fbar.degree == 1:
        return True
    if all(e[2] > 0 for e in Fbar.support()):
        return False
    if chart.is_constant() or p <= validity_threshold(chart):
        return None
    return reduction_is_absolutely_irreducible(chart, p)


def reduction_stats(F: IntPoly, p: int, work_limit: Optional[int] = None) -> ReductionStats:
    """
    扫描 P^2(F_p) 统计 n_p（带重数）

    geometrically_integral 在 p 不超过判据阈值时为 None。
    """
    require_prime(p)
    if F.nvars != 3 or not F.is_homogeneous() or F.is_zero:
        raise ValueError("需要三元非零齐次多项式")
    limit = work_limit if work_limit is not None else get_settings().work_limit
    requested = p * p + p + 1
    if requested > limit:
        raise WorkLimitExceeded(requested, limit)
    Fbar = F.reduce_mod(p)
    if Fbar.is_zero:
        raise ValueError(f"F 模 {p} 为零")
    evaluate = Fbar.evaluator()
    n_p = count = 0
    singular = []
    for P in _projective_points_mod_p(p):
        if evaluate(P) != 0:
            continue
        mu = multiplicity(Fbar, P, p)
        count += 1
        n_p += mu
        if mu > 1:
            singular.append(P)
    integral = _reduction_integral(F, p)
    logger.info(f"F_{p} 上 {count} 个点，带重数 n_p = {n_p}")
    return ReductionStats(p=p, n_p=n_p, point_count=count,
                          geometrically_integral=integral, singular_points=tuple(singular))
