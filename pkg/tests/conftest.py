"""
pytest 公共配置
"""
import os
import sys

import pytest

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 需要较长时间的穷举计算")


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    """每个测试使用独立的数据库与回归文件"""
    monkeypatch.setenv("DGC_DB_PATH", str(tmp_path / "dgc.db"))
    monkeypatch.setenv("DGC_REGRESSION_PATH", str(tmp_path / "regression.json"))
    monkeypatch.delenv("DGC_WORK_LIMIT", raising=False)
    monkeypatch.delenv("DGC_WORKERS", raising=False)
