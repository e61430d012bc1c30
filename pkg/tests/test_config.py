import pytest
from pydantic import ValidationError

from mcgate import config


def test_defaults():
    settings = config.get_settings()
    assert settings.max_oracle_qubits == 24
    assert settings.max_unitary_qubits == 14
    assert settings.debug_verify is False
    assert settings.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("MCGATE_MAX_ORACLE_QUBITS", "20")
    monkeypatch.setenv("MCGATE_DEBUG_VERIFY", "true")
    monkeypatch.setenv("MCGATE_LOG_LEVEL", "debug")
    settings = config.load_settings(reload=True)
    assert settings.max_oracle_qubits == 20
    assert settings.debug_verify is True
    assert settings.log_level == "DEBUG"


def test_settings_are_cached(monkeypatch):
    first = config.get_settings()
    monkeypatch.setenv("MCGATE_MAX_ORACLE_QUBITS", "10")
    assert config.get_settings() is first
    config.reset_settings()
    assert config.get_settings().max_oracle_qubits == 10


def test_env_file(tmp_path, monkeypatch):
    env_file = tmp_path / ".env"
    env_file.write_text("MCGATE_MAX_UNITARY_QUBITS=12\n")
    # registers the variable with monkeypatch so the value dotenv sets is removed afterwards
    monkeypatch.setenv("MCGATE_MAX_UNITARY_QUBITS", "0")
    monkeypatch.delenv("MCGATE_MAX_UNITARY_QUBITS")
    assert config.load_settings(str(env_file), reload=True).max_unitary_qubits == 12


def test_invalid_values(monkeypatch):
    monkeypatch.setenv("MCGATE_MAX_ORACLE_QUBITS", "99")
    monkeypatch.setenv("MCGATE_LOG_LEVEL", "chatty")
    with pytest.raises(ValidationError):
        config.load_settings(reload=True)
    problems = config.validate_env_vars()
    assert any(p.startswith("MCGATE_MAX_ORACLE_QUBITS") for p in problems)
    assert any(p.startswith("MCGATE_LOG_LEVEL") for p in problems)


def test_validate_clean_environment():
    assert config.validate_env_vars() == []


def test_override_settings():
    config.override_settings(max_unitary_qubits=4)
    assert config.get_settings().max_unitary_qubits == 4
    assert config.get_settings().max_oracle_qubits == 24


def test_template(tmp_path):
    out = tmp_path / ".env.template"
    content = config.generate_env_template(str(out))
    assert out.read_text() == content
    for name in config.ENVIRONMENT_VARIABLES:
        assert f"# {name}=" in content


def test_summary(monkeypatch):
    monkeypatch.setenv("MCGATE_MAX_ORACLE_QUBITS", "18")
    summary = config.get_env_summary()
    assert "MCGATE_MAX_ORACLE_QUBITS (optional) = 18" in summary
    assert "MCGATE_DEBUG_VERIFY (optional) = false" in summary


def test_required_variable(tmp_path, monkeypatch):
    entry = dict(config.ENVIRONMENT_VARIABLES["MCGATE_MAX_ORACLE_QUBITS"], required=True)
    monkeypatch.setitem(config.ENVIRONMENT_VARIABLES, "MCGATE_MAX_ORACLE_QUBITS", entry)

    content = config.generate_env_template(str(tmp_path / ".env.template"))
    assert "# REQUIRED\nMCGATE_MAX_ORACLE_QUBITS=\n" in content
    assert "MCGATE_MAX_ORACLE_QUBITS (REQUIRED) = 24" in config.get_env_summary()
    assert config.validate_env_vars() == ["MCGATE_MAX_ORACLE_QUBITS is required"]

    monkeypatch.setenv("MCGATE_MAX_ORACLE_QUBITS", "20")
    assert config.validate_env_vars() == []
