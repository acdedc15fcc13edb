"""
随机多项式语料
按 CorpusSpec 拒绝采样，种子固定时结果逐位可复现
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.algebra.poly import IntPoly, monomials_of_degree, monomials_up_to
from src.config import ConfigError, get_optional, parse_int_list
from src.detmethod.auxpoly import is_irreducible_over_q
from src.irreducibility import NotSquarefreeError, absolutely_irreducible

logger = logging.getLogger(__name__)

FILTERS = ("absolutely_irreducible", "primitive", "irreducible", "reducible", "top_irreducible")
ATTEMPTS_PER_POLY = 200


class CorpusExhausted(RuntimeError):
    """拒绝采样达到尝试上限"""

    def __init__(self, attempts: int, produced: int, wanted: int):
        super().__init__(f"尝试 {attempts} 次只得到 {produced}/{wanted} 个多项式，过滤条件过严")
        self.attempts = attempts
        self.produced = produced


@dataclass(frozen=True)
class CorpusSpec:
    degrees: Tuple[int, ...]
    coeff_bound: int
    nvars: int = 3
    count: int = 20
    seed: int = 0
    homogeneous: bool = True
    filters: Tuple[str, ...] = ("absolutely_irreducible", "primitive")
    density: float = 1.0
    max_attempts: Optional[int] = None

    def __post_init__(self):
        if not self.degrees or min(self.degrees) < 1:
            raise ValueError("次数必须为正")
        if self.coeff_bound < 1:
            raise ValueError("系数界必须为正")
        if self.nvars < 1 or self.count < 0:
            raise ValueError("变量个数与数量不合法")
        if not 0 < self.density <= 1:
            raise ValueError("density 必须在 (0, 1]")
        unknown = set(self.filters) - set(FILTERS)
        if unknown:
            raise ValueError(f"未知过滤条件: {sorted(unknown)}")
        if "absolutely_irreducible" in self.filters and not self._supports_absolute_test():
            raise ValueError("绝对不可约过滤只支持二元多项式或三元齐次型")

    def _supports_absolute_test(self) -> bool:
        return self.nvars == 2 or (self.nvars == 3 and self.homogeneous)

    @property
    def attempt_cap(self) -> int:
        return self.max_attempts if self.max_attempts is not None else ATTEMPTS_PER_POLY * max(self.count, 1)

    @classmethod
    def from_kv(cls, kv: Dict[str, str]) -> "CorpusSpec":
        """键：degrees, coeff_bound, nvars, count, seed, homogeneous, filters, density, max_attempts"""
        try:
            filters = get_optional(kv, "filters", "absolutely_irreducible,primitive")
            attempts = get_optional(kv, "max_attempts")
            return cls(
                degrees=tuple(parse_int_list(get_optional(kv, "degrees", "2-4"))),
                coeff_bound=int(get_optional(kv, "coeff_bound", "10")),
                nvars=int(get_optional(kv, "nvars", "3")),
                count=int(get_optional(kv, "count", "20")),
                seed=int(get_optional(kv, "seed", "0")),
                homogeneous=get_optional(kv, "homogeneous", "true").lower() in ("1", "true", "yes"),
                filters=tuple(x.strip() for x in filters.split(",") if x.strip()),
                density=float(get_optional(kv, "density", "1.0")),
                max_attempts=int(attempts) if attempts else None,
            )
        except ValueError as e:
            raise ConfigError(f"语料配置错误: {e}")

    def to_dict(self) -> Dict:
        return {"degrees": list(self.degrees), "coeff_bound": self.coeff_bound,
                "nvars": self.nvars, "count": self.count, "seed": self.seed,
                "homogeneous": self.homogeneous, "filters": list(self.filters),
                "density": self.density}


# ========== 过滤条件 ==========

def is_absolutely_irreducible(f: IntPoly) -> bool:
    """二元多项式，或经 z = 1 仿射片判定的三元齐次型；含平方因子视为否"""
    if f.is_zero or f.is_constant():
        return False
    if f.nvars == 3 and f.is_homogeneous():
        if f.degree == 1:
            return True
        if all(e[2] > 0 for e, _ in f.terms):
            return False
        f = f.dehomogenize(2)
    if f.nvars != 2:
        raise ValueError("只支持二元多项式或三元齐次型")
    if f.degree == 1:
        return True
    try:
        return absolutely_irreducible(f)
    except NotSquarefreeError:
        return False


def top_part_absolutely_irreducible(f: IntPoly) -> bool:
    """三元仿射多项式的最高次部分是否绝对不可约"""
    if f.nvars != 3:
        raise ValueError("只支持三元多项式")
    return is_absolutely_irreducible(f.degree_part(int(f.degree)))


def _passes(f: IntPoly, filters: Tuple[str, ...]) -> bool:
    for name in filters:
        if name == "primitive" and not f.is_primitive():
            return False
        if name == "irreducible" and not is_irreducible_over_q(f):
            return False
        if name == "reducible" and is_irreducible_over_q(f):
            return False
        if name == "absolutely_irreducible" and not is_absolutely_irreducible(f):
            return False
        if name == "top_irreducible" and not top_part_absolutely_irreducible(f):
            return False
    return True


def _sample(rng: random.Random, spec: CorpusSpec, d: int) -> Optional[IntPoly]:
    top = monomials_of_degree(spec.nvars, d)
    monos = top if spec.homogeneous else monomials_up_to(spec.nvars, d)
    mapping = {}
    for e in monos:
        if spec.density < 1 and rng.random() >= spec.density:
            continue
        mapping[e] = rng.randint(-spec.coeff_bound, spec.coeff_bound)
    f = IntPoly.from_dict(spec.nvars, mapping)
    if f.is_zero or f.degree != d:
        return None
    return f


def generate_corpus(spec: CorpusSpec) -> List[IntPoly]:
    """
    拒绝采样生成语料

    Raises:
        CorpusExhausted: 尝试次数达到上限
    """
    rng = random.Random(spec.seed)
    result: List[IntPoly] = []
    attempts = 0
    while len(result) < spec.count:
        if attempts >= spec.attempt_cap:
            raise CorpusExhausted(attempts, len(result), spec.count)
        attempts += 1
        d = rng.choice(spec.degrees)
        f = _sample(rng, spec, d)
        if f is None or not _passes(f, spec.filters):
            continue
        result.append(f)
    logger.info(f"✓ 语料生成完成: {len(result)} 个多项式，尝试 {attempts} 次")
    return result
