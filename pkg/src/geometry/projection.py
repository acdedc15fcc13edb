"""
射影到超曲面

空间曲线由两个生成元给出。从中心 Λ 投影到 Γ = ∩{L_i = 0}：
    p(P) = (∏ L_j(P_j))·P − Σ_i (∏_{j≠i} L_j(P_j))·L_i(P)·P_i
像曲线 F′ 由对 t 的结式消元得到：F′(Y) ∝ Res_t(F_1(Y + tP_1), F_2(Y + tP_1))。
两个生成元的交可能多出别的分支（例如扭三次曲线外的一条割线）。
结式中恰有一个 d 次、重数 1 的不可约因子时取它为像，投影双有理且次数保持；
其余因子是多余分支的像，计数时按像剔除这些分支上的点。
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from math import factorial, isqrt, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.algebra.poly import IntPoly, default_varnames, parse_varnames, poly_parse
from src.config import get_settings, get_optional
from src.irreducibility.ruppert import absolutely_irreducible
from src.pointcount import ProjPoint, enumerate_affine, enumerate_projective
from src.pointcount.counting import projective_candidates
from .linear import LinearSystem, pluecker, small_violating_solution

logger = logging.getLogger(__name__)

CURVE_MODES = ("projective", "affine")


class ProjectionError(RuntimeError):
    """在上限内找不到好的投影中心"""

    def __init__(self, message: str, diagnostics: Sequence[Dict] = ()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class PreconditionError(ValueError):
    """输入不是不可约曲线，或点落在中心上"""


# ========== 常数 ==========

def center_height_cap(n: int, m: int, d: int) -> int:
    """H(Λ) ≤ ((m+1)² d²)^{n−m−1} (n−m−1)!"""
    k = n - m - 1
    return ((m + 1) ** 2 * d ** 2) ** k * factorial(k)


def form_coefficient_cap(n: int, m: int, B1: int) -> int:
    """B2 = ⌈√((n−m−2)!(n+1))·B1^{n−m−2}⌉"""
    k = n - m - 2
    if k < 0:
        return 1
    value = factorial(k) * (n + 1) * B1 ** (2 * k)
    root = isqrt(value)
    return root if root * root == value else root + 1


def inflation_constant(n: int, m: int, B1: int, B2: int) -> int:
    """(n−m)((n+1)·B1·B2)^{n−m−1}"""
    return (n - m) * ((n + 1) * B1 * B2) ** (n - m - 1)


# ========== 数据 ==========

@dataclass(frozen=True)
class ProjectionSetup:
    """投影中心 P_i、目标线性形式 L_i 与高度膨胀常数"""
    n: int
    m: int
    centers: Tuple[ProjPoint, ...]
    forms: Tuple[Tuple[int, ...], ...]
    B1: int
    B2: int
    inflation: int
    chart_index: Optional[int] = None
    fast_path: Optional[str] = None

    def __post_init__(self):
        if len(self.centers) != self.n - self.m - 1 or len(self.forms) != len(self.centers):
            raise ValueError("中心与线性形式的个数必须为 n−m−1")
        for i, L in enumerate(self.forms):
            for j, P in enumerate(self.centers):
                value = _dot(L, P.coords)
                if i == j and value == 0:
                    raise ValueError(f"L_{i}(P_{i}) = 0")
                if i != j and value != 0:
                    raise ValueError(f"L_{i}(P_{j}) ≠ 0")
            if max(abs(c) for c in L) > self.B2:
                raise ValueError(f"L_{i} 的系数超过 B2 = {self.B2}")
        if self.inflation != inflation_constant(self.n, self.m, self.B1, self.B2):
            raise ValueError("膨胀常数与公式不符")

    @property
    def center_height(self) -> int:
        return max(abs(c) for c in pluecker([P.coords for P in self.centers]))

    def to_dict(self) -> Dict:
        return {
            "n": self.n, "m": self.m,
            "centers": [P.to_list() for P in self.centers],
            "pluecker": list(pluecker([P.coords for P in self.centers])),
            "forms": [list(L) for L in self.forms],
            "B1": self.B1, "B2": self.B2, "inflation": self.inflation,
            "chart_index": self.chart_index, "fast_path": self.fast_path,
        }


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def make_setup(n: int, m: int, d: int, centers: Sequence[Sequence[int]],
               fast_path: Optional[str] = None) -> ProjectionSetup:
    """
    由中心构造 Γ：对每个 i，解"在 P_j (j ≠ i) 上为零、在 P_i 上不为零"的小整数解

    Raises:
        ValueError: 中心相关或高度超过 B1
    """
    points = tuple(ProjPoint.canonical(P) for P in centers)
    B1 = (m + 1) ** 2 * d ** 2
    if any(P.height > B1 for P in points):
        raise ValueError(f"中心高度超过 B1 = {B1}")
    forms = []
    for i, P in enumerate(points):
        rows = [P.coords] + [Q.coords for j, Q in enumerate(points) if j != i]
        forms.append(small_violating_solution(LinearSystem.of(rows)))
    B2 = form_coefficient_cap(n, m, B1)
    chart = None
    if len(forms) == 1 and sum(1 for c in forms[0] if c) == 1:
        chart = next(k for k, c in enumerate(forms[0]) if c)
    return ProjectionSetup(n=n, m=m, centers=points, forms=tuple(forms), B1=B1, B2=B2,
                           inflation=inflation_constant(n, m, B1, B2),
                           chart_index=chart, fast_path=fast_path)


@dataclass(frozen=True)
class PointAudit:
    source: Tuple[int, ...]
    image: Tuple[int, ...]
    source_height: int
    image_height: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.image_height <= self.bound


def project_point(setup: ProjectionSetup, P: Sequence[int]) -> PointAudit:
    """
    p_{Λ,Γ}(P) 的规范代表元并审计高度

    Raises:
        PreconditionError: P ∈ Λ
        ProjectionError: H(像) > inflation·H(P)
    """
    P = ProjPoint.canonical(P)
    lambdas = [_dot(L, Q.coords) for L, Q in zip(setup.forms, setup.centers)]
    scale = prod(lambdas)
    image = [scale * c for c in P.coords]
    for i, (L, Q) in enumerate(zip(setup.forms, setup.centers)):
        weight = prod(lam for j, lam in enumerate(lambdas) if j != i) * _dot(L, P.coords)
        for k, c in enumerate(Q.coords):
            image[k] -= weight * c
    if not any(image):
        raise PreconditionError(f"点 {P.coords} 在投影中心上")
    Q = ProjPoint.canonical(image)
    audit = PointAudit(source=P.coords, image=Q.coords, source_height=P.height,
                       image_height=Q.height, bound=setup.inflation * P.height)
    if not audit.passed:
        raise ProjectionError(f"高度审计失败: H({Q.coords}) = {Q.height} > {audit.bound}")
    return audit


# ========== 曲线 ==========

@dataclass(frozen=True)
class SpaceCurve:
    """P³ 或 A³ 中由两个生成元给出的曲线"""
    generators: Tuple[IntPoly, IntPoly]
    mode: str = "projective"
    declared_degree: Optional[int] = None
    varnames: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.mode not in CURVE_MODES:
            raise ValueError(f"未知模式 {self.mode!r}")
        if len(self.generators) != 2:
            raise ValueError("需要恰好两个生成元")
        expected = 4 if self.mode == "projective" else 3
        for g in self.generators:
            if g.nvars != expected:
                raise ValueError(f"{self.mode} 曲线的生成元需要 {expected} 个变量")
            if g.is_zero or g.is_constant():
                raise ValueError("生成元必须是非常数多项式")
            if self.mode == "projective" and not g.is_homogeneous():
                raise ValueError("射影曲线的生成元必须齐次")

    @property
    def degree(self) -> int:
        if self.declared_degree is not None:
            return self.declared_degree
        return int(self.generators[0].degree) * int(self.generators[1].degree)

    @property
    def names(self) -> List[str]:
        return list(self.varnames) or default_varnames(self.generators[0].nvars)

    @classmethod
    def from_kv(cls, kv: Dict[str, str]) -> "SpaceCurve":
        """键：vars, f1, f2, mode（缺省 projective）, degree（可选）"""
        for key in ("vars", "f1", "f2"):
            if key not in kv:
                raise ValueError(f"曲线文件缺少键 {key!r}")
        names = parse_varnames(kv["vars"])
        mode = get_optional(kv, "mode", "projective")
        degree = get_optional(kv, "degree")
        return cls(generators=(poly_parse(kv["f1"], names), poly_parse(kv["f2"], names)),
                   mode=mode, declared_degree=int(degree) if degree else None,
                   varnames=tuple(names))

    def to_dict(self) -> Dict:
        names = self.names
        return {"mode": self.mode, "degree": self.degree,
                "generators": [g.to_text(names) for g in self.generators]}


def _resultant(g1: IntPoly, g2: IntPoly) -> IntPoly:
    """对第 0 个变量 t 的结式（sympy），结果的变量为其余变量"""
    gens = g1.sympy_gens()
    res = g1.to_sympy(gens).resultant(g2.to_sympy(gens))
    return IntPoly.from_sympy(res)


def _normalize_sign(q: IntPoly) -> IntPoly:
    _, prim = q.content_and_primitive()
    return -prim if prim.leading_term()[1] < 0 else prim


def _image_absolutely_irreducible(q: IntPoly) -> bool:
    if q.degree == 1:
        return True
    if q.nvars == 2:
        return absolutely_irreducible(q)
    chart = next(i for i in range(q.nvars) if any(e[i] == 0 for e in q.support()))
    return absolutely_irreducible(q.dehomogenize(chart))


@dataclass(frozen=True)
class _Classified:
    status: str
    image: Optional[IntPoly] = None
    extra: Tuple[IntPoly, ...] = ()


def _classify(R: IntPoly, d: int) -> _Classified:
    """
    结式分类（d 为曲线次数）：
        good       恰有一个 d 次、重数 1 的绝对不可约因子；其余因子是生成元交集中多余分支的像
        drop       d 次分量的像重数 > 1（投影不是双有理）
        ambiguous  多于一个 d 次因子，无法认出曲线的像
        reducible  没有 d 次因子，或它不绝对不可约
        degenerate 结式为零或常数
    """
    if R.is_zero or R.is_constant():
        return _Classified("degenerate")
    _, factors = R.to_sympy().factor_list()
    factors = [(_normalize_sign(IntPoly.from_sympy(q)), k)
               for q, k in factors if q.total_degree() > 0]
    main = [i for i, (q, _) in enumerate(factors) if q.degree == d]
    if len(main) > 1:
        return _Classified("ambiguous")
    if not main:
        if any(k > 1 and q.degree * k == d for q, k in factors):
            return _Classified("drop")
        return _Classified("reducible")
    q, k = factors[main[0]]
    extra = tuple(p for i, (p, _) in enumerate(factors) if i != main[0])
    if k > 1:
        return _Classified("drop", q, extra)
    if not _image_absolutely_irreducible(q):
        return _Classified("reducible", q, extra)
    return _Classified("good", q, extra)


_FATAL = ("reducible", "degenerate")


def _split_on_image(points, image_of, q: IntPoly, extra: Sequence[IntPoly]):
    """
    按像分拣源点：像在 q 上的保留；像只落在多余因子上的点属于其他分支，计入 excluded

    Returns:
        (保留的 (点, 像) 列表, excluded, 保留点的像是否都在 q 上)
    """
    on_q = q.evaluator()
    on_extra = [r.evaluator() for r in extra]
    kept, excluded, on_curve = [], 0, True
    for P in points:
        Y = image_of(P)
        if on_q(Y) == 0:
            kept.append((P, Y))
        elif any(e(Y) == 0 for e in on_extra):
            excluded += 1
        else:
            kept.append((P, Y))
            on_curve = False
    return kept, excluded, on_curve


def _candidates_by_height(nvars: int, cap: int) -> Iterator[Tuple[int, ...]]:
    """(高度, 字典序) 递增的规范射影点"""
    for t in range(1, cap + 1):
        shell = []
        for vec in product(range(-t, t + 1), repeat=nvars):
            if max(abs(c) for c in vec) != t:
                continue
            if ProjPoint.canonical(vec).coords == vec:
                shell.append(vec)
        shell.sort()
        yield from shell


@dataclass(frozen=True)
class ProjectedCurve:
    """中心搜索的结果：投影设置 + 像平面曲线"""
    setup: ProjectionSetup
    image: IntPoly
    degree: int
    extra_components: Tuple[IntPoly, ...] = ()
    diagnostics: Tuple[Dict, ...] = field(default=(), compare=False)

    def to_dict(self, varnames: Optional[Sequence[str]] = None) -> Dict:
        return {"setup": self.setup.to_dict(), "image": self.image.to_text(varnames),
                "degree": self.degree,
                "extra_components": [r.to_text(varnames) for r in self.extra_components],
                "rejected": list(self.diagnostics)}


def _projective_resultant(curve: SpaceCurve, center: Tuple[int, ...], k: int) -> IntPoly:
    """Res_t F_i(Y + t·P)，Y_k = 0；环变量为 (t, 其余 Y)"""
    rest = [j for j in range(4) if j != k]
    t = IntPoly.variable(4, 0)
    subs = []
    for j in range(4):
        term = t * center[j]
        if j != k:
            term = term + IntPoly.variable(4, rest.index(j) + 1)
        subs.append(term)
    g1, g2 = (F.compose(subs) for F in curve.generators)
    return _resultant(g1, g2)


def _planar_center(curve: SpaceCurve) -> Optional[Tuple[int, ...]]:
    """某个生成元是线性形式时，取其系数非零的第一个坐标方向且不在另一生成元上"""
    for idx, g in enumerate(curve.generators):
        if g.degree != 1:
            continue
        other = curve.generators[1 - idx]
        for k in range(4):
            if g.coeff(tuple(1 if j == k else 0 for j in range(4))) == 0:
                continue
            e = tuple(1 if j == k else 0 for j in range(4))
            if other.evaluate(e) != 0:
                return e
    return None


def find_projection_center(curve: SpaceCurve, cap: Optional[int] = None) -> ProjectedCurve:
    """
    在 P³ 中按 (高度, 字典序) 搜索投影中心

    Raises:
        PreconditionError: 结式表明曲线可约或不是曲线
        ProjectionError: 上限内无好中心（附诊断）
    """
    if curve.mode != "projective":
        raise ValueError("中心搜索需要射影曲线")
    n, m = 3, 1
    d = curve.degree
    B1 = (m + 1) ** 2 * d ** 2
    height_cap = center_height_cap(n, m, d) if cap is None else min(cap, B1)
    diagnostics: List[Dict] = []

    planar = _planar_center(curve)
    ordered: Iterator[Tuple[int, ...]] = _candidates_by_height(4, height_cap)
    if planar is not None:
        ordered = _chain_first(planar, ordered)

    for center in ordered:
        reason = None
        if all(F.evaluate(center) == 0 for F in curve.generators):
            reason = "center_on_curve"
        else:
            setup = make_setup(n, m, d, [center],
                               fast_path="planar" if center == planar else None)
            k = setup.chart_index
            result = _classify(_projective_resultant(curve, center, k), d)
            if result.status == "good":
                q = result.image
                logger.info(f"✓ 投影中心 {center}，像曲线次数 {q.degree}，"
                            f"多余分支 {len(result.extra)} 个")
                return ProjectedCurve(setup=setup, image=q, degree=int(q.degree),
                                      extra_components=result.extra,
                                      diagnostics=tuple(diagnostics))
            if result.status in _FATAL:
                raise PreconditionError(
                    f"中心 {center} 处结式判定为 {result.status}：输入不是次数 {d} 的不可约曲线")
            reason = result.status
        diagnostics.append({"center": list(center), "reason": reason})
        logger.debug(f"中心 {center} 被拒绝: {reason}")
    raise ProjectionError(f"高度 ≤ {height_cap} 内没有好中心", diagnostics)


def _chain_first(first, rest):
    yield first
    for item in rest:
        if item != first:
            yield item


# ========== 计数关系 ==========

@dataclass(frozen=True)
class CountRelation:
    """N(X, B) ≤ N(X′, inflation·B) + d² 的验证数据"""
    B: int
    inflation: int
    degree: int
    source_count: int
    distinct_images: int
    image_count: Optional[int]
    audits_passed: bool
    images_on_curve: bool
    excluded: int = 0

    @property
    def certified_image_lower(self) -> int:
        return self.distinct_images if self.image_count is None else self.image_count

    @property
    def holds(self) -> bool:
        return (self.audits_passed and self.images_on_curve
                and self.source_count <= self.certified_image_lower + self.degree ** 2)

    def to_dict(self) -> Dict:
        return {"B": self.B, "inflation": self.inflation, "degree": self.degree,
                "source_count": self.source_count, "distinct_images": self.distinct_images,
                "image_count": self.image_count, "audits_passed": self.audits_passed,
                "images_on_curve": self.images_on_curve, "excluded": self.excluded,
                "holds": self.holds}


def _drop(coords: Sequence[int], k: int) -> Tuple[int, ...]:
    return tuple(c for j, c in enumerate(coords) if j != k)


def projective_count_relation(curve: SpaceCurve, projected: ProjectedCurve, B: int,
                              work_limit: Optional[int] = None,
                              count_image: bool = False) -> CountRelation:
    """
    枚举 X 上高度 ≤ B 的点，逐点审计投影高度

    生成元的公共零点中像只落在多余因子上的点不属于 X，计入 excluded。
    X′ 上的点数以互不相同的像为下界；count_image 为真时另在预算内穷举 inflation·B 下的像曲线点。
    """
    setup = projected.setup
    k = setup.chart_index
    source = enumerate_projective(list(curve.generators), B, work_limit=work_limit)
    audits = {P.coords: project_point(setup, P.coords) for P in source.points}
    kept, excluded, on_curve = _split_on_image(
        list(audits), lambda P: ProjPoint.canonical(_drop(audits[P].image, k)).coords,
        projected.image, projected.extra_components)
    audits_ok = all(audits[P].passed for P, _ in kept)
    images = {Y for _, Y in kept}
    limit = work_limit if work_limit is not None else get_settings().work_limit
    big = setup.inflation * B
    image_count = None
    if count_image and projective_candidates(3, big) <= limit:
        image_count = enumerate_projective(projected.image, big, work_limit=limit,
                                           keep_points=False).count
    relation = CountRelation(B=B, inflation=setup.inflation, degree=projected.degree,
                             source_count=len(kept), distinct_images=len(images),
                             image_count=image_count, audits_passed=audits_ok,
                             images_on_curve=on_curve, excluded=excluded)
    if not relation.holds:
        logger.error(f"⚠️ 计数关系不成立: {relation.to_dict()}")
    return relation


# ========== 仿射 ==========

@dataclass(frozen=True)
class AffineReduction:
    """A³ 曲线沿无穷远方向 v 投影到坐标平面"""
    curve: SpaceCurve
    direction: Tuple[int, int, int]
    chart_index: int
    image: IntPoly
    inflation: int
    fast_path: Optional[str]
    relation: CountRelation
    diagnostics: Tuple[Dict, ...] = field(default=(), compare=False)

    def to_dict(self) -> Dict:
        names = [n for j, n in enumerate(self.curve.names) if j != self.chart_index]
        return {"curve": self.curve.to_dict(), "direction": list(self.direction),
                "chart_index": self.chart_index, "image": self.image.to_text(names),
                "inflation": self.inflation, "fast_path": self.fast_path,
                "relation": self.relation.to_dict(), "rejected": list(self.diagnostics)}


def affine_project(v: Sequence[int], k: int, P: Sequence[int]) -> Tuple[int, ...]:
    """Y = v_k·P − P_k·v，去掉第 k 个坐标"""
    return _drop([v[k] * p - P[k] * c for p, c in zip(P, v)], k)


def affine_inflation(v: Sequence[int], k: int) -> int:
    return abs(v[k]) + max((abs(c) for j, c in enumerate(v) if j != k), default=0)


def _affine_resultant(curve: SpaceCurve, v: Sequence[int], k: int) -> IntPoly:
    """Res_t f_i^h(Y + t·v, v_k)，Y_k = 0；f_i^h(Y + tv, v_k) = v_k^{deg} f_i((Y + tv)/v_k)"""
    rest = [j for j in range(3) if j != k]
    t = IntPoly.variable(3, 0)
    subs = []
    for j in range(3):
        term = t * v[j]
        if j != k:
            term = term + IntPoly.variable(3, rest.index(j) + 1)
        subs.append(term)
    subs.append(IntPoly.constant(3, v[k]))
    g1, g2 = (f.homogenize().compose(subs) for f in curve.generators)
    return _resultant(g1, g2)


def _coordinate_plane_index(curve: SpaceCurve) -> Optional[int]:
    """某个生成元为 ±x_k 时返回 k"""
    for g in curve.generators:
        if g.num_terms == 1 and g.degree == 1 and abs(g.terms[0][1]) == 1:
            return g.terms[0][0].index(1)
    return None


def affine_reduce_curve(curve: SpaceCurve, B: int, cap: Optional[int] = None,
                        work_limit: Optional[int] = None) -> AffineReduction:
    """
    A³ 曲线化为平面曲线并验证 N_aff(X, B) ≤ N_aff(X′, inflation·B) + d²

    方向 v 取无穷远点：v_k ≠ 0 且两个生成元的最高次部分在 v 处非零。
    """
    if curve.mode != "affine":
        raise ValueError("需要仿射曲线")
    d = curve.degree
    height_cap = center_height_cap(3, 1, d) if cap is None else cap
    diagnostics: List[Dict] = []
    plane_k = _coordinate_plane_index(curve)
    candidates: Iterator[Tuple[int, ...]] = _candidates_by_height(3, height_cap)
    plane_direction = None
    if plane_k is not None:
        plane_direction = tuple(1 if j == plane_k else 0 for j in range(3))
        candidates = _chain_first(plane_direction, candidates)

    chosen = None
    for v in candidates:
        k = next(j for j, c in enumerate(v) if c)
        tops = [g.degree_part(int(g.degree)) for g in curve.generators]
        if all(top.evaluate(v) == 0 for top in tops):
            diagnostics.append({"direction": list(v), "reason": "direction_on_closure"})
            continue
        result = _classify(_affine_resultant(curve, v, k), d)
        if result.status == "good":
            chosen = (v, k, result.image, result.extra)
            break
        if result.status in _FATAL:
            raise PreconditionError(f"方向 {v} 处结式判定为 {result.status}：输入不是不可约曲线")
        diagnostics.append({"direction": list(v), "reason": result.status})
    if chosen is None:
        raise ProjectionError(f"高度 ≤ {height_cap} 内没有好方向", diagnostics)

    v, k, q, extra = chosen
    fast = "coordinate_plane" if v == plane_direction else None
    inflation = affine_inflation(v, k)
    source = enumerate_affine(list(curve.generators), B, work_limit=work_limit)
    kept, excluded, on_curve = _split_on_image(
        [P.coords for P in source.points], lambda P: affine_project(v, k, P), q, extra)
    audits_ok = all(max((abs(c) for c in Y), default=0) <= inflation * B for _, Y in kept)
    images = {Y for _, Y in kept}
    limit = work_limit if work_limit is not None else get_settings().work_limit
    image_count = None
    if (2 * inflation * B + 1) ** 2 <= limit:
        image_count = enumerate_affine(q, inflation * B, work_limit=limit, keep_points=False).count
    relation = CountRelation(B=B, inflation=inflation, degree=int(q.degree),
                             source_count=len(kept), distinct_images=len(images),
                             image_count=image_count, audits_passed=audits_ok,
                             images_on_curve=on_curve, excluded=excluded)
    logger.info(f"{'✓' if relation.holds else '⚠️'} 仿射约化 v={v}: "
                f"N={len(kept)}, 像 {len(images)} 个, inflation={inflation}")
    return AffineReduction(curve=curve, direction=tuple(v), chart_index=k, image=q,
                           inflation=inflation, fast_path=fast, relation=relation,
                           diagnostics=tuple(diagnostics))
