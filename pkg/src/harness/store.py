"""
报告存储层
实验报告与辅助多项式证书的 sqlite 持久化
"""
import json
import logging
import sqlite3
from typing import Dict, List, Optional

from src.db.schema import get_connection, init_db
from src.detmethod.auxpoly import AuxCertificate
from .report import ExperimentReport

logger = logging.getLogger(__name__)


class ReportStore:
    """报告存储管理器"""

    def __init__(self, db_path: str):
        """
        初始化存储管理器（表不存在时自动创建）

        Args:
            db_path: 数据库文件路径
        """
        self.db_path = db_path
        init_db(db_path)

    def _get_conn(self) -> sqlite3.Connection:
        conn = get_connection(self.db_path)
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    # ========== 实验报告 ==========

    def save_report(self, report: ExperimentReport) -> int:
        """
        保存报告及其全部记录

        Returns:
            运行 ID
        """
        conn = self._get_conn()
        cursor = conn.cursor()
        try:
            cursor.execute("""
                INSERT INTO experiment_runs (
                    experiment, regression_key, schema_version, inputs, aggregates,
                    checks, regression_status, passed
                )
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                report.experiment,
                report.regression_key,
                report.schema_version,
                json.dumps(report.inputs, ensure_ascii=False),
                json.dumps(report.aggregates),
                json.dumps(report.checks),
                report.regression_status,
                int(report.passed),
            ))
            run_id = cursor.lastrowid
            cursor.executemany(
                "INSERT INTO experiment_records (run_id, instance_id, payload) VALUES (?, ?, ?)",
                [(run_id, rec.get("id"), json.dumps(rec, ensure_ascii=False)) for rec in report.records],
            )
            conn.commit()
            logger.debug(f"✓ 报告已保存: {report.experiment} (ID: {run_id}, {len(report.records)} 条记录)")
            return run_id
        except Exception as e:
            conn.rollback()
            logger.error(f"保存报告失败: {e}")
            raise
        finally:
            conn.close()

    def fetch_run(self, run_id: int) -> Optional[Dict]:
        """按 ID 取出运行及其记录"""
        conn = self._get_conn()
        try:
            row = conn.execute("SELECT * FROM experiment_runs WHERE id = ?", (run_id,)).fetchone()
            if row is None:
                return None
            run = dict(row)
            for key in ("inputs", "aggregates", "checks"):
                run[key] = json.loads(run[key]) if run[key] else {}
            run["passed"] = bool(run["passed"])
            records = conn.execute(
                "SELECT payload FROM experiment_records WHERE run_id = ? ORDER BY instance_id",
                (run_id,)).fetchall()
            run["records"] = [json.loads(r["payload"]) for r in records]
            return run
        finally:
            conn.close()

    def list_runs(self, experiment: Optional[str] = None, limit: int = 50) -> List[Dict]:
        """最近的运行摘要"""
        conn = self._get_conn()
        try:
            sql = "SELECT id, experiment, regression_key, regression_status, passed, created_at FROM experiment_runs"
            params: tuple = ()
            if experiment:
                sql += " WHERE experiment = ?"
                params = (experiment,)
            sql += " ORDER BY id DESC LIMIT ?"
            rows = conn.execute(sql, params + (limit,)).fetchall()
            return [dict(r, passed=bool(r["passed"])) for r in rows]
        finally:
            conn.close()

    # ========== 证书 ==========

    def save_certificate(self, cert: AuxCertificate, run_id: Optional[int] = None) -> int:
        conn = self._get_conn()
        try:
            cursor = conn.execute("""
                INSERT INTO certificates (
                    run_id, f, mode, bound, aux_degree, g, s_points, bezout_bound, theory_bound
                )
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                run_id, cert.f.to_text(), cert.mode, cert.B, cert.M, cert.g.to_text(),
                cert.s_points, cert.bezout_bound, cert.theory_bound,
            ))
            conn.commit()
            return cursor.lastrowid
        except Exception as e:
            conn.rollback()
            logger.error(f"保存证书失败: {e}")
            raise
        finally:
            conn.close()

    def fetch_certificates(self, f: Optional[str] = None) -> List[Dict]:
        """按多项式文本过滤（缺省返回全部）"""
        conn = self._get_conn()
        try:
            if f is None:
                rows = conn.execute("SELECT * FROM certificates ORDER BY id").fetchall()
            else:
                rows = conn.execute("SELECT * FROM certificates WHERE f = ? ORDER BY id", (f,)).fetchall()
            return [dict(r) for r in rows]
        finally:
            conn.close()
