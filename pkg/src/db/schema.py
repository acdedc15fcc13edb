"""
数据库 Schema 定义
"""
import os
import sqlite3
from typing import Optional

from src.config import get_settings

# 完整的 Schema SQL（用于测试）
SCHEMA_SQL = """
CREATE TABLE IF NOT EXISTS experiment_runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    experiment TEXT NOT NULL,
    regression_key TEXT,
    schema_version INTEGER DEFAULT 1,
    inputs TEXT,
    aggregates TEXT,
    checks TEXT,
    regression_status TEXT,
    passed INTEGER DEFAULT 0,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
);

CREATE TABLE IF NOT EXISTS experiment_records (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id INTEGER NOT NULL REFERENCES experiment_runs(id) ON DELETE CASCADE,
    instance_id TEXT,
    payload TEXT,
    UNIQUE(run_id, instance_id)
);

CREATE TABLE IF NOT EXISTS certificates (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id INTEGER REFERENCES experiment_runs(id) ON DELETE SET NULL,
    f TEXT NOT NULL,
    mode TEXT,
    bound INTEGER,
    aux_degree INTEGER,
    g TEXT,
    s_points INTEGER,
    bezout_bound INTEGER,
    theory_bound REAL,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
);

CREATE INDEX IF NOT EXISTS idx_runs_experiment ON experiment_runs(experiment);
CREATE INDEX IF NOT EXISTS idx_certificates_f ON certificates(f);
"""


def get_connection(db_path: Optional[str] = None) -> sqlite3.Connection:
    """获取数据库连接"""
    path = db_path or get_settings().db_path

    # 确保目录存在
    dir_path = os.path.dirname(path)
    if dir_path:
        os.makedirs(dir_path, exist_ok=True)

    conn = sqlite3.connect(path)
    conn.row_factory = sqlite3.Row
    return conn


def init_db(db_path: Optional[str] = None):
    """初始化数据库"""
    conn = get_connection(db_path)
    conn.executescript(SCHEMA_SQL)
    conn.commit()
    conn.close()


def reset_db(db_path: Optional[str] = None):
    """重置数据库"""
    path = db_path or get_settings().db_path
    if os.path.exists(path):
        os.remove(path)
    init_db(path)
