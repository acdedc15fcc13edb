"""
辅助多项式构造（行列式方法的构造性版本）

对 M = 0, 1, ... 依次求在全部高度 ≤ B 的点上为零的 M 次形式（仿射情形为次数 ≤ M 的多项式），
一旦零空间维数严格大于 f 的倍式子空间维数，就从零空间中取出一个不被 f 整除的 g。
平面曲线情形再用 Bézout 验证 N ≤ d·M。
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.poly import IntPoly, default_varnames, evaluate_monomial, glex_key
from src.algebra.poly import monomials_of_degree, monomials_up_to
from src.algebra.linalg import RationalMatrix, nullspace_rational, rank_mod_p_rows
from src.config import get_settings
from src.pointcount import enumerate_affine, enumerate_projective
from .bounds import affine_degree_formula, walsh_degree_formula

logger = logging.getLogger(__name__)

MODES = ("affine", "projective")

# 秩的快速上界检验用的素数（模 p 秩 ≤ Q 上秩）
RANK_SCREEN_PRIME = 2_147_483_647


class DegreeCapExceeded(RuntimeError):
    """搜索到 M 上限仍未找到辅助多项式"""

    def __init__(self, cap: int, log: Sequence[Dict]):
        super().__init__(f"M 超过上限 {cap}（可用 DGC_MAX_AUX_DEGREE 或 --max-degree 调整）")
        self.cap = cap
        self.log = list(log)


@dataclass(frozen=True)
class AuxCertificate:
    """已验证的辅助多项式"""
    f: IntPoly
    B: int
    mode: str
    M: int
    g: IntPoly
    s_points: int
    points: Tuple[Tuple[int, ...], ...] = ()
    bezout_bound: Optional[int] = None
    theory_bound: Optional[float] = None
    search_log: Tuple[Dict, ...] = field(default=(), compare=False)

    @property
    def is_plane_curve(self) -> bool:
        return _is_plane_curve(self.f, self.mode)

    def to_dict(self, varnames: Optional[Sequence[str]] = None) -> Dict:
        names = list(varnames) if varnames else default_varnames(self.f.nvars)
        return {
            "f": self.f.to_text(names),
            "B": self.B,
            "mode": self.mode,
            "M": self.M,
            "g": self.g.to_text(names),
            "points": [list(pt) for pt in self.points],
            "s_points": self.s_points,
            "bezout_bound": self.bezout_bound,
            "theory_bound": self.theory_bound,
        }


def _is_plane_curve(f: IntPoly, mode: str) -> bool:
    return (mode == "affine" and f.nvars == 2) or (mode == "projective" and f.nvars == 3)


def is_irreducible_over_q(f: IntPoly) -> bool:
    """sympy 在 Q 上分解：恰一个不可约因子且重数为 1"""
    if f.is_zero or f.is_constant():
        return False
    _, factors = f.to_sympy().factor_list()
    nonconstant = [(q, k) for q, k in factors if q.total_degree() > 0]
    return len(nonconstant) == 1 and nonconstant[0][1] == 1


def _multiple_dimension(nvars: int, d: int, M: int, mode: str) -> int:
    if M < d:
        return 0
    if mode == "projective":
        return comb(M - d + nvars - 1, nvars - 1)
    return comb(M - d + nvars, nvars)


def _candidate_monomials(nvars: int, M: int, mode: str):
    return monomials_of_degree(nvars, M) if mode == "projective" else monomials_up_to(nvars, M)


def _pick_non_multiple(f: IntPoly, monos, basis: List[Tuple[int, ...]]) -> Optional[IntPoly]:
    """按首项单项式的分级字典序（升序）挑第一个不被 f 整除的基向量"""
    candidates = []
    for vec in basis:
        g = IntPoly.from_dict(f.nvars, {e: c for e, c in zip(monos, vec)})
        if not g.is_zero:
            candidates.append(g)
    candidates.sort(key=lambda g: glex_key(g.leading_term()[0]))
    for g in candidates:
        if not g.is_divisible_by(f):
            return g
    return None


def _enumerate_points(f: IntPoly, B: int, mode: str, work_limit: Optional[int]):
    if mode == "projective":
        result = enumerate_projective(f, B, work_limit=work_limit)
    else:
        result = enumerate_affine(f, B, work_limit=work_limit)
    return [P.coords for P in result.points]


def theory_bound_for(f: IntPoly, B: int, mode: str, badness: Optional[float] = None,
                     c: Optional[float] = None) -> Optional[float]:
    """
    按射影/仿射公式给出 M 的理论上界（报告用）

    b(f) 缺省在平面曲线情形计算，其余情形取 1。
    """
    d = int(f.degree)
    norm_fd = f.degree_part(d).coeff_norm()
    if badness is None:
        badness = _default_badness(f, mode)
    if mode == "projective":
        n = f.nvars - 2
        return walsh_degree_formula(n, d, B, norm_fd, badness, c) if n >= 1 else None
    n = f.nvars - 1
    return affine_degree_formula(n, d, B, norm_fd, badness, c) if n >= 1 else None


def _default_badness(f: IntPoly, mode: str) -> float:
    from src.irreducibility.badness import bad_primes, plane_curve_badness
    try:
        if mode == "projective" and f.nvars == 3:
            return plane_curve_badness(f).badness
        if mode == "affine" and f.nvars == 2:
            return bad_primes(f).badness
    except ValueError as e:
        logger.warning(f"⚠️ 坏度计算失败，按 1 处理: {e}")
    return 1.0


def aux_polynomial(f: IntPoly, B: int, mode: str = "projective",
                   work_limit: Optional[int] = None, max_degree: Optional[int] = None,
                   with_theory_bound: bool = True, badness: Optional[float] = None) -> AuxCertificate:
    """
    求最小 M 的辅助多项式

    Args:
        f: 本原且在 Q 上不可约的多项式（射影模式需齐次）
        B: 高度界
        mode: affine | projective
        work_limit: 点枚举预算
        max_degree: M 的上限，缺省取 DGC_MAX_AUX_DEGREE
        with_theory_bound: 是否计算理论界
        badness: 已知的 b(f)，省去重复计算

    Raises:
        WorkLimitExceeded: 点枚举超出预算
        DegreeCapExceeded: M 超过上限
    """
    if mode not in MODES:
        raise ValueError(f"未知模式 {mode!r}，应为 affine 或 projective")
    if f.is_zero or f.is_constant():
        raise ValueError("f 必须是非常数多项式")
    if mode == "projective" and not f.is_homogeneous():
        raise ValueError("射影模式需要齐次多项式")
    if not f.is_primitive():
        raise ValueError(f"f 不是本原多项式: {f}")
    if not is_irreducible_over_q(f):
        raise ValueError(f"f 在 Q 上可约: {f}")
    cap = max_degree if max_degree is not None else get_settings().max_aux_degree
    d = int(f.degree)
    points = _enumerate_points(f, B, mode, work_limit)
    s = len(points)
    logger.info(f"{mode} 模式 B={B}: 共 {s} 个点，开始搜索 M")

    log: List[Dict] = []
    for M in range(cap + 1):
        monos = _candidate_monomials(f.nvars, M, mode)
        r = len(monos)
        mult = _multiple_dimension(f.nvars, d, M, mode)
        rows = [[evaluate_monomial(e, pt) for e in monos] for pt in points]
        if rows:
            upper = r - rank_mod_p_rows(rows, RANK_SCREEN_PRIME)
            if upper <= mult:
                log.append({"M": M, "monomials": r, "kernel_upper": upper, "multiples": mult})
                logger.debug(f"M={M}: 核维数 ≤ {upper} ≤ 倍式维数 {mult}，跳过")
                continue
        basis = nullspace_rational(RationalMatrix.from_rows(rows, cols=r))
        log.append({"M": M, "monomials": r, "kernel": len(basis), "multiples": mult})
        logger.debug(f"M={M}: 核维数 {len(basis)}，倍式维数 {mult}")
        if len(basis) <= mult:
            continue
        g = _pick_non_multiple(f, monos, basis)
        if g is None:
            raise RuntimeError(f"M={M}: 核维数大于倍式维数却找不到非倍式")
        theory = None
        if with_theory_bound:
            theory = theory_bound_for(f, B, mode, badness=badness)
        cert = AuxCertificate(
            f=f, B=B, mode=mode, M=M, g=g, s_points=s, points=tuple(points),
            bezout_bound=d * M if _is_plane_curve(f, mode) else None,
            theory_bound=theory, search_log=tuple(log),
        )
        check = validate_certificate(cert)
        if not check.passed:
            raise RuntimeError(f"证书自检失败: {check.to_dict()}")
        logger.info(f"✓ 找到辅助多项式 M={M}: {g}")
        return cert
    raise DegreeCapExceeded(cap, log)


# ========== 验证 ==========

@dataclass(frozen=True)
class CertificateCheck:
    not_divisible: bool
    vanishes: bool
    degree_ok: bool
    bezout: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.not_divisible and self.vanishes and self.degree_ok and self.bezout is not False

    def to_dict(self) -> Dict:
        return {"not_divisible": self.not_divisible, "vanishes": self.vanishes,
                "degree_ok": self.degree_ok, "bezout": self.bezout, "passed": self.passed}


def bezout_check(cert: AuxCertificate) -> bool:
    """s ≤ deg(f)·M（只对平面曲线）"""
    if not cert.is_plane_curve:
        raise ValueError("Bézout 检验只适用于平面曲线证书")
    bound = int(cert.f.degree) * cert.M
    ok = cert.s_points <= bound
    if not ok:
        logger.error(f"⚠️ Bézout 不成立: {cert.s_points} > {bound}")
    return ok


def validate_certificate(cert: AuxCertificate, f: Optional[IntPoly] = None) -> CertificateCheck:
    """重新验证证书：f ∤ g，g 在全部点上为零，deg g = M，平面曲线时 Bézout"""
    f = cert.f if f is None else f
    g = cert.g
    not_divisible = not g.is_zero and not g.is_divisible_by(f)
    evaluate = g.evaluator()
    vanishes = all(evaluate(pt) == 0 for pt in cert.points)
    if cert.mode == "projective":
        degree_ok = g.is_homogeneous() and g.degree == cert.M
    else:
        degree_ok = g.degree == cert.M
    bezout = bezout_check(cert) if cert.is_plane_curve else None
    return CertificateCheck(not_divisible=not_divisible, vanishes=vanishes,
                            degree_ok=degree_ok, bezout=bezout)
