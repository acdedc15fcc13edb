"""
运行配置
从 .env / 环境变量读取计算预算、路径与日志级别，并解析 key = value 形式的配置文件
"""
import os
import re
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_WORK_LIMIT = 10 ** 9
DEFAULT_MAX_AUX_DEGREE = 64


class ConfigError(ValueError):
    """配置文件格式错误"""


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ConfigError(f"环境变量 {name} 不是整数: {raw!r}")
    if value <= 0:
        raise ConfigError(f"环境变量 {name} 必须为正: {value}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"环境变量 {name} 不是数值: {raw!r}")


@dataclass(frozen=True)
class Settings:
    """全局运行设置（不可变）"""
    work_limit: int = DEFAULT_WORK_LIMIT
    max_aux_degree: int = DEFAULT_MAX_AUX_DEGREE
    workers: int = 1
    db_path: str = "data/dgc.db"
    regression_path: str = "data/regression.json"
    log_level: str = "INFO"
    bound_constant: float = 1.0
    api_port: int = 8888

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            work_limit=_env_int("DGC_WORK_LIMIT", DEFAULT_WORK_LIMIT),
            max_aux_degree=_env_int("DGC_MAX_AUX_DEGREE", DEFAULT_MAX_AUX_DEGREE),
            workers=_env_int("DGC_WORKERS", 1),
            db_path=os.getenv("DGC_DB_PATH", "data/dgc.db"),
            regression_path=os.getenv("DGC_REGRESSION_PATH", "data/regression.json"),
            log_level=os.getenv("DGC_LOG_LEVEL", "INFO").upper(),
            bound_constant=_env_float("DGC_BOUND_CONSTANT", 1.0),
            api_port=_env_int("DGC_API_PORT", 8888),
        )


def get_settings() -> Settings:
    """每次调用重新读取环境变量，便于测试中 monkeypatch"""
    return Settings.from_env()


def parse_kv_text(text: str, source: str = "<text>") -> Dict[str, str]:
    """
    解析 key = value 文本

    Args:
        text: 文件内容，# 开头为注释
        source: 出错时显示的来源名

    Returns:
        键到字符串值的映射（键统一小写）
    """
    result: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: 缺少 '=': {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if not key:
            raise ConfigError(f"{source}:{lineno}: 空键名")
        if key in result:
            raise ConfigError(f"{source}:{lineno}: 重复的键 {key!r}")
        result[key] = value.strip()
    return result


def load_kv_file(path: Union[str, Path]) -> Dict[str, str]:
    """读取 key = value 配置文件"""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"配置文件不存在: {path}")
    logger.debug(f"读取配置文件 {path}")
    return parse_kv_text(path.read_text(encoding="utf-8"), source=str(path))


def parse_int_list(value: str) -> List[int]:
    """解析 '1,2,5' 或 '2-6' 形式的整数列表"""
    items: List[int] = []
    for chunk in value.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = re.fullmatch(r"(\d+)\s*-\s*(\d+)", chunk)
        if match:
            lo, hi = int(match.group(1)), int(match.group(2))
            if hi < lo:
                raise ConfigError(f"区间上界小于下界: {chunk}")
            items.extend(range(lo, hi + 1))
            continue
        try:
            items.append(int(chunk))
        except ValueError:
            raise ConfigError(f"不是整数: {chunk!r}")
    return items


def get_optional(kv: Dict[str, str], key: str, default: Optional[str] = None) -> Optional[str]:
    value = kv.get(key)
    return default if value is None or value == "" else value
