"""
Unit-тесты для модуля sphframes.config

Покрытие:
  - env_float_or_default / env_int_or_default
  - parse_cutoffs
  - RunConfig: проверки N, m, отсечек, формата, источника
  - RunConfig.from_namespace и переменные окружения
"""

import argparse

import pytest

from src.sphframes.config import DEFAULT_SEED
from src.sphframes.config import DEFAULT_VERIFY_TOL
from src.sphframes.config import RunConfig
from src.sphframes.config import env_float_or_default
from src.sphframes.config import env_int_or_default
from src.sphframes.config import parse_cutoffs
from src.sphframes.errors import ConfigError


class TestEnvOverrides:
    """Тесты чтения переменных окружения."""

    def test_float_default(self, monkeypatch):
        monkeypatch.delenv("SPHFRAMES_VERIFY_TOL", raising=False)
        assert env_float_or_default("SPHFRAMES_VERIFY_TOL", 1e-10) == 1e-10

    def test_float_override(self, monkeypatch):
        monkeypatch.setenv("SPHFRAMES_VERIFY_TOL", "1e-6")
        assert env_float_or_default("SPHFRAMES_VERIFY_TOL", 1e-10) == 1e-6

    def test_float_invalid(self, monkeypatch):
        monkeypatch.setenv("SPHFRAMES_VERIFY_TOL", "tiny")
        with pytest.raises(ConfigError, match="must be a float"):
            env_float_or_default("SPHFRAMES_VERIFY_TOL", 1e-10)

    def test_int_override(self, monkeypatch):
        monkeypatch.setenv("SPHFRAMES_SEED", "42")
        assert env_int_or_default("SPHFRAMES_SEED", 0) == 42

    def test_int_invalid(self, monkeypatch):
        monkeypatch.setenv("SPHFRAMES_SEED", "4.2")
        with pytest.raises(ConfigError, match="must be an integer"):
            env_int_or_default("SPHFRAMES_SEED", 0)


class TestParseCutoffs:
    """Тесты parse_cutoffs."""

    def test_valid(self):
        assert parse_cutoffs("1,2,4,8") == (1, 2, 4, 8)
        assert parse_cutoffs(" 1, 3 ,") == (1, 3)

    @pytest.mark.parametrize("text", ["", "1,a", "0,1", "2,2", "3,1"])
    def test_invalid(self, text):
        with pytest.raises(ConfigError):
            parse_cutoffs(text)


class TestRunConfig:
    """Тесты RunConfig."""

    def test_defaults(self):
        config = RunConfig("verify", 4, 4)
        assert config.fmt == "json"
        assert config.verify_tol == DEFAULT_VERIFY_TOL
        assert config.seed == DEFAULT_SEED

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({"N": 0, "max_degree": 1}, "--N"),
            ({"N": 3, "max_degree": 4}, "--m"),
            ({"N": 3, "max_degree": 0}, "--m"),
            ({"N": 3, "max_degree": 3, "cutoffs": (1, 2, 4)}, "exceed"),
            ({"N": 3, "max_degree": 3, "fmt": "xml"}, "--format"),
            ({"N": 3, "max_degree": 3, "fn": "const", "in_path": "a.csv"}, "mutually exclusive"),
            ({"N": 3, "max_degree": 3, "verify_tol": 0.0}, "positive"),
        ],
    )
    def test_invalid(self, kwargs, message):
        with pytest.raises(ConfigError, match=message):
            RunConfig("verify", **kwargs)

    def test_config_error_is_value_error(self):
        with pytest.raises(ValueError):
            RunConfig("grid", 0, 1)

    def test_from_namespace(self, monkeypatch):
        monkeypatch.setenv("SPHFRAMES_VERIFY_TOL", "1e-8")
        monkeypatch.setenv("SPHFRAMES_SEED", "7")
        args = argparse.Namespace(command="verify", N=8, m=None, cutoffs="1,2,4,8", out=None, format="csv")
        config = RunConfig.from_namespace(args)
        assert config.max_degree == 8
        assert config.cutoffs == (1, 2, 4, 8)
        assert config.fmt == "csv"
        assert config.verify_tol == 1e-8
        assert config.seed == 7
        assert config.fn is None

    def test_from_namespace_without_optional_flags(self, monkeypatch):
        monkeypatch.delenv("SPHFRAMES_VERIFY_TOL", raising=False)
        monkeypatch.delenv("SPHFRAMES_SEED", raising=False)
        config = RunConfig.from_namespace(argparse.Namespace(command="grid", N=2, out="g.csv"))
        assert config.max_degree == 2
        assert config.out_path == "g.csv"
        assert config.cutoffs is None
