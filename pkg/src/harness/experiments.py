"""
实验驱动
每个实验返回 ExperimentReport；只断言与常数无关的不等式（Bézout、平凡界、p 进整除、见证下界），
比值最大值交给回归文件比对
"""
import logging
import random
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from src.algebra.poly import IntPoly, default_varnames, parse_varnames, poly_parse
from src.algebra.primes import primes_in_range
from src.config import ConfigError, get_optional, parse_int_list
from src.detmethod import (
    aux_polynomial, chebyshev_check, mertens_report, random_determinant_instance,
    validate_certificate, verify_padic_divisibility,
)
from src.detmethod.bounds import affine_count_shape, affine_curve_shape, projective_curve_shape
from src.irreducibility import bad_primes
from src.pointcount import WorkLimitExceeded, enumerate_affine, schwarz_zippel_bound
from src.witness import build_witness, verify_projective_lower_bound
from .corpus import CorpusSpec, generate_corpus, top_part_absolutely_irreducible
from .report import ExperimentReport

logger = logging.getLogger(__name__)

SURFACE_MIN_DEGREE = 5
SURFACE_EXPONENT = 14


def _max(values: List[float]) -> Optional[float]:
    return max(values) if values else None


def _failure(rec: Dict, e: Exception) -> Dict:
    rec["error"] = f"{type(e).__name__}: {e}"
    logger.warning(f"⚠️ 实例 {rec['id']} 失败: {rec['error']}")
    return rec


# ========== 射影平面曲线 ==========

def _curve_record(rid: str, f: IntPoly, B: int, work_limit: Optional[int],
                  max_degree: Optional[int]) -> Dict:
    d = int(f.degree)
    rec = {"id": rid, "f": f.to_text(), "d": d, "B": B}
    try:
        cert = aux_polynomial(f, B, "projective", work_limit=work_limit,
                              max_degree=max_degree, with_theory_bound=False)
    except (ValueError, RuntimeError) as e:
        return _failure(rec, e)
    check = validate_certificate(cert)
    N = cert.s_points
    rec.update(N=N, M=cert.M, bezout=check.bezout, certificate=check.passed,
               ratio=N / projective_curve_shape(d, B))
    return rec


def experiment_curve_bound(corpus: Sequence[IntPoly], bounds: Sequence[int],
                           witness_degrees: Sequence[int] = (), work_limit: Optional[int] = None,
                           max_degree: Optional[int] = None, inputs: Optional[Dict] = None) -> ExperimentReport:
    """
    射影平面曲线：N(X, B)、最小 M 证书与 Bézout 检验

    witness_degrees 中的见证曲线在各自的 B 上加入，并检验 N ≥ d² B^{2/d} / 5。
    """
    records: List[Dict] = []
    for i, f in enumerate(corpus):
        if f.nvars != 3 or not f.is_homogeneous():
            raise ValueError(f"第 {i} 个多项式不是三元齐次型: {f}")
        for B in bounds:
            records.append(_curve_record(f"f{i:03d}-B{B:03d}", f, B, work_limit, max_degree))
    for d in witness_degrees:
        w = build_witness(d)
        rec = _curve_record(f"w{d:02d}-B{w.B:03d}", w.f.homogenize(), w.B, work_limit, max_degree)
        if "N" in rec:
            rec["witness_floor"] = (5 * rec["N"]) ** d >= d ** (2 * d) * w.B ** 2
            rec["floor_ratio"] = rec["N"] / (d ** 2 * w.B ** (2 / d))
        records.append(rec)

    done = [r for r in records if "error" not in r]
    checks = {
        "bezout": all(r["bezout"] is not False for r in done),
        "certificates": all(r["certificate"] for r in done),
    }
    if witness_degrees:
        checks["witness_floor"] = all(r.get("witness_floor", True) for r in done)
    aggregates = {
        "instances": len(records),
        "failures": len(records) - len(done),
        "max_ratio": _max([r["ratio"] for r in done]),
        "max_M": _max([r["M"] for r in done]),
    }
    logger.info(f"曲线实验完成: {len(done)}/{len(records)} 个实例成功，最大比值 {aggregates['max_ratio']}")
    return ExperimentReport(
        experiment="curve_bound",
        inputs=inputs or {"corpus": [f.to_text() for f in corpus], "bounds": list(bounds),
                          "witness_degrees": list(witness_degrees)},
        records=records, aggregates=aggregates, checks=checks,
    )


# ========== 仿射平面曲线 ==========

def experiment_affine_curve_bound(corpus: Sequence[IntPoly], bounds: Sequence[int],
                                  work_limit: Optional[int] = None,
                                  inputs: Optional[Dict] = None) -> ExperimentReport:
    """
    仿射平面曲线：N_aff 与推论右端（c = 1）的比值

    max_ratio 取 N_aff / (d³ B^{1/d} (log B + d))，max_shape_ratio 取相对推论右端的比值。
    """
    records: List[Dict] = []
    for i, f in enumerate(corpus):
        if f.nvars != 2:
            raise ValueError(f"第 {i} 个多项式不是二元多项式: {f}")
        d = int(f.degree)
        norm_fd = f.degree_part(d).coeff_norm()
        try:
            report = bad_primes(f)
            b_f = report.badness if report.is_absolutely_irreducible else None
        except ValueError as e:
            b_f = None
            logger.warning(f"⚠️ 第 {i} 个多项式的坏度无法计算: {e}")
        for B in bounds:
            rec = {"id": f"f{i:03d}-B{B:03d}", "f": f.to_text(), "d": d, "B": B, "norm_fd": norm_fd}
            if b_f is None:
                records.append(_failure(rec, ValueError("f 不是绝对不可约多项式")))
                continue
            try:
                N = enumerate_affine(f, B, work_limit=work_limit, keep_points=False).count
            except WorkLimitExceeded as e:
                records.append(_failure(rec, e))
                continue
            shape = affine_count_shape(d, B, norm_fd, b_f, c=1.0)
            rec.update(N=N, badness=b_f, shape_value=shape, shape_ratio=N / shape,
                       ratio=N / affine_curve_shape(d, B),
                       schwarz_zippel=N <= schwarz_zippel_bound(d, 1, B))
            records.append(rec)

    done = [r for r in records if "error" not in r]
    aggregates = {
        "instances": len(records),
        "failures": len(records) - len(done),
        "max_ratio": _max([r["ratio"] for r in done]),
        "max_shape_ratio": _max([r["shape_ratio"] for r in done]),
    }
    return ExperimentReport(
        experiment="affine_curve_bound",
        inputs=inputs or {"corpus": [f.to_text() for f in corpus], "bounds": list(bounds)},
        records=records, aggregates=aggregates,
        checks={"schwarz_zippel": all(r["schwarz_zippel"] for r in done)},
    )


# ========== 曲面 ==========

def experiment_surface_linear(f: IntPoly, bounds: Sequence[int], work_limit: Optional[int] = None,
                              inputs: Optional[Dict] = None) -> ExperimentReport:
    """
    三元仿射曲面：N_aff(f, B) 关于 B 的线性增长表

    fitted_constant 为 max N/(d¹⁴ B)；slope / intercept 为最小二乘直线（只展示）。

    Raises:
        ValueError: d < 5，或最高次部分不是绝对不可约
        WorkLimitExceeded: (2B+1)³ 超过预算
    """
    if f.nvars != 3:
        raise ValueError("需要三元多项式")
    d = int(f.degree)
    if d < SURFACE_MIN_DEGREE:
        raise ValueError(f"次数 {d} < {SURFACE_MIN_DEGREE}")
    if not top_part_absolutely_irreducible(f):
        raise ValueError(f"最高次部分 {f.degree_part(d)} 不是绝对不可约的")
    records = []
    for B in bounds:
        N = enumerate_affine(f, B, work_limit=work_limit, keep_points=False).count
        records.append({"id": f"B{B:03d}", "B": B, "N": N, "per_B": N / B,
                        "ratio": N / (d ** SURFACE_EXPONENT * B),
                        "schwarz_zippel": N <= schwarz_zippel_bound(d, 2, B)})
    aggregates = {"d": d, "fitted_constant": _max([r["ratio"] for r in records]),
                  "max_per_B": _max([r["per_B"] for r in records])}
    if len(records) >= 2:
        slope, intercept = np.polyfit([r["B"] for r in records], [r["N"] for r in records], 1)
        aggregates.update(slope=float(slope), intercept=float(intercept))
    return ExperimentReport(
        experiment="surface_linear",
        inputs=inputs or {"f": f.to_text(), "bounds": list(bounds)},
        records=records, aggregates=aggregates,
        checks={"schwarz_zippel": all(r["schwarz_zippel"] for r in records)},
    )


# ========== 常数无关的检验 ==========

def experiment_witness_floor(d_max: int = 12, work_limit: Optional[int] = None) -> ExperimentReport:
    """d = 1..d_max 的见证曲线下界"""
    if d_max < 1:
        raise ValueError("d_max 必须 ≥ 1")
    records = []
    for d in range(1, d_max + 1):
        w = build_witness(d)
        rep = verify_projective_lower_bound(w, work_limit=work_limit)
        records.append({"id": f"d{d:02d}", "f": w.f.to_text(), **rep.to_dict()})
    return ExperimentReport(
        experiment="witness_floor", inputs={"d_max": d_max}, records=records,
        aggregates={"instances": len(records),
                    "min_floor_ratio": min(r["count"] / r["required"] for r in records)},
        checks={"floor": all(r["holds"] for r in records)},
    )


def experiment_padic(count: int = 100, seed: int = 0, sizes: Sequence[int] = (2, 3, 4),
                     primes: Optional[Sequence[int]] = None) -> ExperimentReport:
    """随机合法实例上的 v_p(Δ) ≥ A(s)"""
    rng = random.Random(seed)
    pool = list(primes) if primes else primes_in_range(4, 97)
    records = []
    for i in range(count):
        p = rng.choice(pool)
        s = rng.choice(list(sizes))
        inst = random_determinant_instance(rng, p, s)
        rep = verify_padic_divisibility(inst)
        records.append({"id": f"i{i:03d}", "f": inst.f.to_text(), **rep.to_dict()})
    return ExperimentReport(
        experiment="padic", inputs={"count": count, "seed": seed, "sizes": list(sizes),
                                    "primes": pool},
        records=records,
        aggregates={"instances": count, "zero_determinants": sum(r["valuation"] is None for r in records)},
        checks={"divisibility": all(r["passed"] for r in records)},
    )


def experiment_chebyshev(x: int = 10 ** 6) -> ExperimentReport:
    cheb = chebyshev_check(x)
    mertens = mertens_report(x) if x >= 2 else None
    record = {"id": f"x{x}", **cheb.to_dict()}
    if mertens is not None:
        record.update(mertens.to_dict())
    return ExperimentReport(experiment="chebyshev", inputs={"x": x}, records=[record],
                            aggregates={"theta_over_x": cheb.theta / x},
                            checks={"chebyshev": cheb.holds})


# ========== 配置文件入口 ==========

def _bounds(kv: Dict[str, str], default: str) -> List[int]:
    values = parse_int_list(get_optional(kv, "bounds", default))
    if not values or min(values) < 1:
        raise ConfigError("bounds 必须是正整数列表")
    return values


def _corpus_or_poly(kv: Dict[str, str], nvars: int, homogeneous: bool) -> List[IntPoly]:
    if "poly" in kv:
        names = parse_varnames(get_optional(kv, "vars", ",".join(default_varnames(nvars))))
        return [poly_parse(text, names) for text in kv["poly"].split(";") if text.strip()]
    spec_kv = {"nvars": str(nvars), "homogeneous": str(homogeneous).lower(), **kv}
    return generate_corpus(CorpusSpec.from_kv(spec_kv))


def _run_curve_bound(kv, work_limit):
    corpus = _corpus_or_poly(kv, 3, True)
    witnesses = parse_int_list(get_optional(kv, "witness_degrees", ""))
    max_degree = get_optional(kv, "max_degree")
    return experiment_curve_bound(corpus, _bounds(kv, "1,2,5"), witnesses, work_limit,
                                  int(max_degree) if max_degree else None, inputs=dict(kv))


def _run_affine_curve_bound(kv, work_limit):
    corpus = _corpus_or_poly(kv, 2, False)
    return experiment_affine_curve_bound(corpus, _bounds(kv, "1,2,5,10"), work_limit, inputs=dict(kv))


def _run_surface_linear(kv, work_limit):
    if "poly" not in kv:
        raise ConfigError("surface_linear 需要 poly")
    f = poly_parse(kv["poly"], parse_varnames(get_optional(kv, "vars", "x,y,z")))
    return experiment_surface_linear(f, _bounds(kv, "1-5"), work_limit, inputs=dict(kv))


def _run_witness_floor(kv, work_limit):
    return experiment_witness_floor(int(get_optional(kv, "d_max", "12")), work_limit)


def _run_padic(kv, work_limit):
    sizes = parse_int_list(get_optional(kv, "sizes", "2,3,4"))
    primes = parse_int_list(get_optional(kv, "primes", "")) or None
    return experiment_padic(int(get_optional(kv, "count", "100")), int(get_optional(kv, "seed", "0")),
                            sizes, primes)


def _run_chebyshev(kv, work_limit):
    return experiment_chebyshev(int(get_optional(kv, "x", str(10 ** 6))))


EXPERIMENTS: Dict[str, Callable] = {
    "curve_bound": _run_curve_bound,
    "affine_curve_bound": _run_affine_curve_bound,
    "surface_linear": _run_surface_linear,
    "witness_floor": _run_witness_floor,
    "padic": _run_padic,
    "chebyshev": _run_chebyshev,
}


def run_experiment(kv: Dict[str, str], work_limit: Optional[int] = None) -> ExperimentReport:
    """按配置中的 experiment 键分派"""
    name = kv.get("experiment")
    if name not in EXPERIMENTS:
        raise ConfigError(f"未知实验 {name!r}，可选: {', '.join(EXPERIMENTS)}")
    logger.info(f"开始实验 {name}")
    return EXPERIMENTS[name](kv, work_limit)
