"""
dgc HTTP API 服务器
"""
import logging
from datetime import datetime
from typing import Any, Dict, List, Tuple

from flask import Flask, jsonify, request
from flask_cors import CORS

from src import __version__
from src.algebra.poly import IntPoly, default_varnames, parse_varnames, poly_parse
from src.config import get_settings
from src.detmethod import DeterminantInstance, aux_polynomial, chebyshev_check, validate_certificate, verify_padic_divisibility
from src.irreducibility import bad_primes
from src.pointcount import WorkLimitExceeded, enumerate_affine, enumerate_projective
from src.witness import build_witness, verify_affine_lower_bound, verify_projective_lower_bound

logging.basicConfig(level=get_settings().log_level)
logger = logging.getLogger(__name__)

app = Flask(__name__)
CORS(app)

MAX_CHEBYSHEV_X = 10 ** 7
MAX_WITNESS_DEGREE = 40


def error_response(e: Exception):
    """ValueError → 400，预算超限 → 413，其余 → 500"""
    if isinstance(e, WorkLimitExceeded):
        return jsonify({"error": str(e), "requested": e.requested, "limit": e.limit}), 413
    if isinstance(e, ValueError):
        return jsonify({"error": str(e)}), 400
    logger.exception(f"请求处理失败: {e}")
    return jsonify({"error": str(e)}), 500


def read_body() -> Dict[str, Any]:
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise ValueError("请求体必须是 JSON 对象")
    return body


def read_poly(body: Dict[str, Any]) -> Tuple[IntPoly, List[str]]:
    if "poly" not in body:
        raise ValueError("缺少 poly")
    names = parse_varnames(body.get("vars") or ",".join(default_varnames(2)))
    return poly_parse(str(body["poly"]), names), names


def read_int(body: Dict[str, Any], key: str, default=None) -> int:
    value = body.get(key, default)
    if value is None:
        raise ValueError(f"缺少 {key}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{key} 必须是整数: {value!r}")


@app.route('/health', methods=['GET'])
def health_check():
    return jsonify({
        "status": "healthy",
        "timestamp": datetime.now().isoformat(),
        "version": __version__,
        "work_limit": get_settings().work_limit,
    })


@app.route('/count', methods=['POST'])
def count_points():
    try:
        body = read_body()
        f, _ = read_poly(body)
        B = read_int(body, "bound")
        mode = body.get("mode", "affine")
        if mode == "affine":
            result = enumerate_affine(f, B)
        elif mode == "projective":
            result = enumerate_projective(f, B)
        else:
            raise ValueError(f"未知模式 {mode!r}")
        return jsonify(result.to_dict(include_points=bool(body.get("list"))))
    except Exception as e:
        return error_response(e)


@app.route('/badness', methods=['POST'])
def badness():
    try:
        body = read_body()
        f, names = read_poly(body)
        limit = body.get("prime_scan_limit")
        report = bad_primes(f, prime_scan_limit=int(limit) if limit is not None else None)
        return jsonify(report.to_dict(names))
    except Exception as e:
        return error_response(e)


@app.route('/auxpoly', methods=['POST'])
def auxpoly():
    try:
        body = read_body()
        f, names = read_poly(body)
        max_degree = body.get("max_degree")
        cert = aux_polynomial(f, read_int(body, "bound"), body.get("mode", "projective"),
                              max_degree=int(max_degree) if max_degree is not None else None)
        data = cert.to_dict(names)
        data["check"] = validate_certificate(cert).to_dict()
        return jsonify(data)
    except Exception as e:
        return error_response(e)


@app.route('/witness/<int:d>', methods=['GET'])
def witness(d: int):
    try:
        if d > MAX_WITNESS_DEGREE:
            raise ValueError(f"d 不能超过 {MAX_WITNESS_DEGREE}")
        n = request.args.get("n", default=2, type=int)
        w = build_witness(d, n)
        data = w.to_dict()
        verify = request.args.get("verify")
        if verify in ("projective", "both"):
            data["projective"] = verify_projective_lower_bound(w).to_dict()
        if verify in ("affine", "both"):
            data["affine"] = verify_affine_lower_bound(w).to_dict()
        return jsonify(data)
    except Exception as e:
        return error_response(e)


@app.route('/padic-check', methods=['POST'])
def padic_check():
    try:
        inst = DeterminantInstance.from_dict(read_body())
        return jsonify(verify_padic_divisibility(inst).to_dict())
    except Exception as e:
        return error_response(e)


@app.route('/chebyshev/<int:x>', methods=['GET'])
def chebyshev(x: int):
    try:
        if x > MAX_CHEBYSHEV_X:
            raise ValueError(f"x 不能超过 {MAX_CHEBYSHEV_X}")
        return jsonify(chebyshev_check(x).to_dict())
    except Exception as e:
        return error_response(e)


@app.route('/api-docs', methods=['GET'])
def api_docs():
    return jsonify({
        "openapi": "3.0.0",
        "info": {"title": "dgc API", "version": __version__},
        "paths": {
            "/health": {"get": {"summary": "健康检查"}},
            "/count": {"post": {"summary": "有界高度点计数"}},
            "/badness": {"post": {"summary": "坏素数与坏度"}},
            "/auxpoly": {"post": {"summary": "最小次数辅助多项式证书"}},
            "/witness/{d}": {"get": {"summary": "下界见证曲线"}},
            "/padic-check": {"post": {"summary": "行列式 p 进整除检验"}},
            "/chebyshev/{x}": {"get": {"summary": "素数对数和上界"}},
        }
    })


def run_server(host: str = '0.0.0.0', port: int = 8888, debug: bool = False):
    logger.info(f"启动 API 服务器: http://{host}:{port}")
    app.run(host=host, port=port, debug=debug, threaded=True)


if __name__ == '__main__':
    run_server(port=get_settings().api_port, debug=True)
