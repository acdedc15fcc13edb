"""
dgc 命令行
退出码：0 全部检验通过，1 检验失败或计算中止，2 用法错误
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from src.algebra.poly import parse_varnames, poly_parse
from src.config import get_settings, load_kv_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def emit(args, data: Dict, lines: List[str]):
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _poly_args(args):
    names = parse_varnames(args.vars)
    return poly_parse(args.poly, names), names


# ========== 子命令 ==========

def cmd_count(args) -> int:
    from src.pointcount import enumerate_affine, enumerate_projective

    f, _ = _poly_args(args)
    counter = enumerate_affine if args.mode == "affine" else enumerate_projective
    result = counter(f, args.bound, keep_points=args.list)
    lines = [f"{args.mode} 点数 (B={args.bound}): {result.count}"]
    if args.list and result.points:
        lines += [f"  {p.to_list()}" for p in result.points]
    emit(args, result.to_dict(include_points=args.list), lines)
    return EXIT_OK


def cmd_auxpoly(args) -> int:
    from src.detmethod import aux_polynomial, validate_certificate

    f, names = _poly_args(args)
    cert = aux_polynomial(f, args.bound, args.mode, max_degree=args.max_degree)
    check = validate_certificate(cert)
    data = cert.to_dict(names)
    data["check"] = check.to_dict()
    if args.store:
        from src.harness.store import ReportStore
        data["certificate_id"] = ReportStore(get_settings().db_path).save_certificate(cert)
    emit(args, data, [
        f"f = {data['f']}, B = {cert.B}, {cert.mode}",
        f"点数 s = {cert.s_points}，最小 M = {cert.M}",
        f"g = {data['g']}",
        f"Bézout 上界 d·M = {cert.bezout_bound}" if cert.bezout_bound is not None else "（非平面曲线，无 Bézout 检验）",
        f"{'✓' if check.passed else '⚠️'} 证书检验: {check.to_dict()}",
    ])
    return EXIT_OK if check.passed else EXIT_CHECK_FAILED


def cmd_badness(args) -> int:
    from src.irreducibility import bad_primes

    f, names = _poly_args(args)
    report = bad_primes(f, prime_scan_limit=args.prime_scan_limit)
    data = report.to_dict(names)
    lines = [
        f"f = {data['f']}，阈值 27d⁴ = {report.threshold}",
        f"绝对不可约: {report.is_absolutely_irreducible}",
        f"候选素数: {list(report.candidate_primes)}",
        f"坏素数: {list(report.bad_primes)}",
        f"log b(f) = {report.log_badness:.6f}",
    ]
    if report.scan_agrees is not None:
        lines.append(f"{'✓' if report.scan_agrees else '⚠️'} 逐素数扫描至 {args.prime_scan_limit}: "
                     f"{list(report.scan_bad_primes)}")
    emit(args, data, lines)
    return EXIT_CHECK_FAILED if report.scan_agrees is False else EXIT_OK


def cmd_witness(args) -> int:
    from src.witness import (
        build_witness, kronecker_vandermonde_det_check, verify_affine_lower_bound,
        verify_grid, verify_projective_lower_bound,
    )

    w = build_witness(args.degree, args.nvars)
    data = w.to_dict()
    det = kronecker_vandermonde_det_check(w)
    data["grid_vanishes"] = verify_grid(w)
    data["determinant"] = det.to_dict()
    ok = data["grid_vanishes"] and det.matches
    lines = [f"d = {w.d}, n = {w.n}: f = {data['f']}",
             f"网格 {list(w.grid)}^{w.n} 上全部为零: {data['grid_vanishes']}",
             f"Kronecker–Vandermonde 行列式检验: {det.matches}"]
    if args.verify in ("projective", "both"):
        rep = verify_projective_lower_bound(w)
        data["projective"] = rep.to_dict()
        ok = ok and rep.holds
        lines.append(f"{'✓' if rep.holds else '⚠️'} 射影: N(X, {rep.B}) = {rep.count} ≥ {rep.required:.4f}")
    if args.verify in ("affine", "both"):
        rep = verify_affine_lower_bound(w)
        data["affine"] = rep.to_dict()
        ok = ok and rep.holds
        lines.append(f"{'✓' if rep.holds else '⚠️'} 仿射: N_aff = {rep.count} ≥ {rep.required:.4f}")
    emit(args, data, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_project(args) -> int:
    from src.geometry import SpaceCurve, affine_reduce_curve, find_projection_center, projective_count_relation

    curve = SpaceCurve.from_kv(load_kv_file(args.curve))
    if curve.mode == "affine":
        reduction = affine_reduce_curve(curve, args.bound)
        data = reduction.to_dict()
        relation = reduction.relation
        lines = [f"方向 v = {list(reduction.direction)}，膨胀系数 {reduction.inflation}",
                 f"像曲线: {data['image']}"]
    else:
        projected = find_projection_center(curve)
        relation = projective_count_relation(curve, projected, args.bound,
                                              count_image=args.count_image)
        names = [n for j, n in enumerate(curve.names) if j != projected.setup.chart_index]
        data = {"curve": curve.to_dict(), "projection": projected.to_dict(names),
                "relation": relation.to_dict()}
        lines = [f"中心 {[list(c) for c in projected.setup.centers]}，膨胀系数 {projected.setup.inflation}",
                 f"像曲线: {projected.image.to_text(names)}（次数 {projected.degree}）"]
    lines.append(f"{'✓' if relation.holds else '⚠️'} N(X, {args.bound}) = {relation.source_count} ≤ "
                 f"{relation.certified_image_lower} + {relation.degree}²")
    if relation.excluded:
        lines.append(f"  多余分支上的 {relation.excluded} 个点已剔除")
    emit(args, data, lines)
    return EXIT_OK if relation.holds else EXIT_CHECK_FAILED


def cmd_padic_check(args) -> int:
    from src.detmethod import DeterminantInstance, verify_padic_divisibility

    report = verify_padic_divisibility(DeterminantInstance.load(args.instance))
    data = report.to_dict()
    emit(args, data, [f"p = {report.p}, s = {report.s}, μ = {report.mu}",
                      f"{'✓' if report.passed else '⚠️'} v_p(Δ) = {data['valuation']} ≥ A(s) = {report.required}"])
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_experiment(args) -> int:
    from src.harness import ReportStore, compare_regression, freeze_regression, run_experiment

    report = run_experiment(load_kv_file(args.config))
    if args.freeze:
        freeze_regression(report)
    report = compare_regression(report)
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    data = report.to_dict()
    if args.store:
        data["run_id"] = ReportStore(get_settings().db_path).save_report(report)
    lines = [f"实验 {report.experiment}（{report.regression_key}）: {len(report.records)} 条记录"]
    lines += [f"  {k} = {v}" for k, v in report.aggregates.items()]
    lines += [f"  {'✓' if ok else '⚠️'} {name}" for name, ok in report.checks.items()]
    lines.append(f"  回归: {report.regression_status}")
    emit(args, data, lines)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_serve(args) -> int:
    from src.api.server import run_server

    run_server(host=args.host, port=args.port or get_settings().api_port, debug=args.debug)
    return EXIT_OK


# ========== 解析器 ==========

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="输出 JSON")
    common.add_argument("--verbose", action="store_true", help="DEBUG 日志")

    parser = argparse.ArgumentParser(
        prog="dgc",
        description="行列式方法与有界高度有理点",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python dgc.py count --poly "x^2 + y^2 - z^2" --vars x,y,z --bound 10 --mode projective
  python dgc.py auxpoly --poly "x^2 + y^2 - z^2" --vars x,y,z --bound 5
  python dgc.py badness --poly "y^2 - x^3 - 7" --vars x,y --prime-scan-limit 5000
  python dgc.py witness --degree 5 --verify both
  python dgc.py project --curve data/examples/twisted_cubic.txt --bound 3
  python dgc.py padic-check --instance data/examples/conic_p5.json
  python dgc.py experiment --config data/examples/witness_floor.txt --freeze
        """
    )
    sub = parser.add_subparsers(dest="command", help="可用命令")

    def poly_options(p, default_vars="x,y"):
        p.add_argument("--poly", required=True, help="多项式文本")
        p.add_argument("--vars", default=default_vars, help="变量名，逗号分隔")

    p = sub.add_parser("count", parents=[common], help="穷举有界高度的点")
    poly_options(p)
    p.add_argument("--bound", type=int, required=True, help="高度界 B")
    p.add_argument("--mode", choices=["affine", "projective"], default="affine")
    p.add_argument("--list", action="store_true", help="列出全部点")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("auxpoly", parents=[common], help="最小次数辅助多项式")
    poly_options(p, "x,y,z")
    p.add_argument("--bound", type=int, required=True, help="高度界 B")
    p.add_argument("--mode", choices=["affine", "projective"], default="projective")
    p.add_argument("--max-degree", type=int, default=None, help="M 的上限")
    p.add_argument("--store", action="store_true", help="写入报告库")
    p.set_defaults(func=cmd_auxpoly)

    p = sub.add_parser("badness", parents=[common], help="坏素数与 b(f)")
    poly_options(p)
    p.add_argument("--prime-scan-limit", type=int, default=None, help="逐素数扫描上界")
    p.set_defaults(func=cmd_badness)

    p = sub.add_parser("witness", parents=[common], help="下界见证曲线")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--nvars", type=int, default=2)
    p.add_argument("--verify", choices=["projective", "affine", "both"], default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("project", parents=[common], help="空间曲线投影到平面")
    p.add_argument("--curve", required=True, help="曲线文件（key = value）")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--count-image", action="store_true", help="在预算内穷举像曲线的点（射影情形）")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("padic-check", parents=[common], help="行列式 p 进整除检验")
    p.add_argument("--instance", required=True, help="实例 JSON 文件")
    p.set_defaults(func=cmd_padic_check)

    p = sub.add_parser("experiment", parents=[common], help="运行实验")
    p.add_argument("--config", required=True, help="实验配置文件（key = value）")
    p.add_argument("--csv", default=None, help="记录表导出路径")
    p.add_argument("--store", action="store_true", help="写入报告库")
    p.add_argument("--freeze", action="store_true", help="冻结回归值")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("serve", parents=[common], help="启动 HTTP API 服务器")
    p.add_argument("--host", default="0.0.0.0", help="监听地址")
    p.add_argument("--port", type=int, default=None, help="监听端口")
    p.add_argument("--debug", action="store_true", help="调试模式")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    level = logging.DEBUG if args.verbose else get_settings().log_level
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"⚠️ {type(e).__name__}: {e}")
        print(f"失败: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
