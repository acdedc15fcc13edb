"""
配置测试
"""
import pytest

from src.config import (
    ConfigError, Settings, get_settings, load_kv_file, parse_int_list, parse_kv_text,
)


class TestSettings:

    def test_defaults(self):
        """未设置环境变量时使用默认值"""
        settings = get_settings()
        assert settings.work_limit == 10 ** 9
        assert settings.workers == 1

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("DGC_WORK_LIMIT", "1_000")
        monkeypatch.setenv("DGC_LOG_LEVEL", "debug")
        settings = Settings.from_env()
        assert settings.work_limit == 1000
        assert settings.log_level == "DEBUG"

    def test_env_invalid(self, monkeypatch):
        monkeypatch.setenv("DGC_WORK_LIMIT", "many")
        with pytest.raises(ConfigError):
            get_settings()

    def test_env_non_positive(self, monkeypatch):
        monkeypatch.setenv("DGC_WORKERS", "0")
        with pytest.raises(ConfigError):
            get_settings()


class TestKeyValue:
    """key = value 配置文件"""

    def test_parse(self):
        kv = parse_kv_text("# 注释\nExperiment = curve_bound\n\nbounds = 1, 2\n")
        assert kv == {"experiment": "curve_bound", "bounds": "1, 2"}

    def test_value_keeps_equals(self):
        assert parse_kv_text("poly = x = y")["poly"] == "x = y"

    def test_missing_equals(self):
        with pytest.raises(ConfigError):
            parse_kv_text("bounds 1,2")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            parse_kv_text("a = 1\nA = 2")

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_kv_file(tmp_path / "none.txt")

    def test_load_file(self, tmp_path):
        path = tmp_path / "exp.txt"
        path.write_text("d_max = 5\n", encoding="utf-8")
        assert load_kv_file(path) == {"d_max": "5"}


class TestIntList:

    def test_list_and_range(self):
        assert parse_int_list("1, 2, 5") == [1, 2, 5]
        assert parse_int_list("2-4, 10") == [2, 3, 4, 10]

    def test_bad_range(self):
        with pytest.raises(ConfigError):
            parse_int_list("5-2")

    def test_not_integer(self):
        with pytest.raises(ConfigError):
            parse_int_list("1, two")
