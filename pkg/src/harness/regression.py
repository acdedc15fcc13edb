"""
回归值冻结与比对
数据文件：{"provenance": {...}, "entries": {regression_key: {...}}}
"""
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional, Union

from src import __version__
from src.config import get_settings
from .report import ExperimentReport

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _resolve(path: Optional[PathLike]) -> Path:
    return Path(path if path is not None else get_settings().regression_path)


def load_regression(path: Optional[PathLike] = None) -> Dict:
    target = _resolve(path)
    if not target.exists():
        return {"provenance": {}, "entries": {}}
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"回归文件 {target} 不是合法 JSON: {e}")
    data.setdefault("provenance", {})
    data.setdefault("entries", {})
    return data


def compare_regression(report: ExperimentReport,
                       path: Optional[PathLike] = None) -> ExperimentReport:
    """缺少条目为 unfrozen；数值逐项精确相等为 match"""
    entry = load_regression(path)["entries"].get(report.regression_key)
    if entry is None:
        return report.with_regression("unfrozen")
    current = report.regression_values
    frozen = entry.get("values", {})
    if current == frozen:
        return report.with_regression("match", {"frozen": frozen})
    logger.error(f"⚠️ 回归不一致 {report.regression_key}: 冻结 {frozen}，当前 {current}")
    return report.with_regression("mismatch", {"frozen": frozen, "current": current})


def freeze_regression(report: ExperimentReport, path: Optional[PathLike] = None) -> Dict:
    """写入（覆盖）当前报告的回归值"""
    target = _resolve(path)
    data = load_regression(target)
    entry = {
        "experiment": report.experiment,
        "inputs": report.inputs,
        "values": report.regression_values,
        "frozen_at": datetime.now().isoformat(timespec="seconds"),
        "version": __version__,
    }
    data["entries"][report.regression_key] = entry
    data["provenance"].update({"generator": "dgc experiment --freeze", "version": __version__})
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"✓ 已冻结回归值 {report.regression_key} → {target}")
    return entry
