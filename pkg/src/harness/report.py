"""
实验报告
带 schema 版本的 JSON 与 CSV 导出
"""
import csv
import hashlib
import io
import json
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1
REGRESSION_KEYS = ("max_ratio", "max_shape_ratio", "fitted_constant")
REGRESSION_STATUSES = ("match", "mismatch", "unfrozen")


@dataclass(frozen=True)
class ExperimentReport:
    experiment: str
    inputs: Dict[str, Any]
    records: List[Dict[str, Any]]
    aggregates: Dict[str, Any]
    checks: Dict[str, bool]
    regression_status: Optional[str] = None
    regression_detail: Dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and self.regression_status != "mismatch"

    @property
    def regression_key(self) -> str:
        digest = hashlib.sha256(json.dumps(self.inputs, sort_keys=True).encode()).hexdigest()
        return f"{self.experiment}-{digest[:12]}"

    @property
    def regression_values(self) -> Dict[str, Any]:
        return {k: self.aggregates[k] for k in REGRESSION_KEYS if k in self.aggregates}

    def with_regression(self, status: str, detail: Optional[Dict] = None) -> "ExperimentReport":
        if status not in REGRESSION_STATUSES:
            raise ValueError(f"未知回归状态 {status!r}")
        return replace(self, regression_status=status, regression_detail=detail or {})

    def to_dict(self) -> Dict:
        return {
            "schema_version": self.schema_version,
            "experiment": self.experiment,
            "regression_key": self.regression_key,
            "inputs": self.inputs,
            "aggregates": self.aggregates,
            "checks": self.checks,
            "regression": {"status": self.regression_status, **self.regression_detail},
            "passed": self.passed,
            "records": self.records,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_csv(self) -> str:
        """记录表导出为 CSV，列为所有记录键的并集（按首次出现顺序）"""
        columns: List[str] = []
        for rec in self.records:
            for key in rec:
                if key not in columns:
                    columns.append(key)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for rec in self.records:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                             for k, v in rec.items()})
        return buffer.getvalue()
