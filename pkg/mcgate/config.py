#!/usr/bin/env python3
"""
mcgate Environment Configuration
Declares every environment variable the library reads, loads .env files
and validates the values into a Settings model.
"""

import logging
import os
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

logger = logging.getLogger(__name__)


# =============================================================================
# ENVIRONMENT VARIABLE REGISTRY
# =============================================================================
ENVIRONMENT_VARIABLES: Dict[str, Dict[str, Any]] = {
    "MCGATE_MAX_ORACLE_QUBITS": {
        "description": "Largest width simulated by the statevector, sampled and pattern oracles",
        "default": "24",
        "required": False,
        "field": "max_oracle_qubits",
    },
    "MCGATE_MAX_UNITARY_QUBITS": {
        "description": "Largest width for which the dense full unitary is built",
        "default": "14",
        "required": False,
        "field": "max_unitary_qubits",
    },
    "MCGATE_DEBUG_VERIFY": {
        "description": "Check every multi-controlled SU(2) emission against the oracle",
        "default": "false",
        "required": False,
        "field": "debug_verify",
    },
    "MCGATE_LOG_LEVEL": {
        "description": "Log level for the mcgate logger hierarchy",
        "default": "WARNING",
        "required": False,
        "field": "log_level",
    },
}


class Settings(BaseModel):
    """Validated runtime settings."""

    max_oracle_qubits: int = Field(default=24, ge=1, le=30)
    max_unitary_qubits: int = Field(default=14, ge=1, le=16)
    debug_verify: bool = False
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level '{value}'")
        return level


_settings: Optional[Settings] = None


def _raw_values() -> Dict[str, str]:
    raw = {}
    for var_name, var_info in ENVIRONMENT_VARIABLES.items():
        value = os.getenv(var_name)
        if value is not None and value.strip() != "":
            raw[var_info["field"]] = value.strip()
    return raw


def load_settings(env_file: Optional[str] = None, reload: bool = False) -> Settings:
    """Load .env (without overriding the process environment) and validate."""
    global _settings
    if _settings is not None and not reload:
        return _settings

    load_dotenv(env_file, override=False)
    _settings = Settings(**_raw_values())
    logger.debug("settings loaded: %s", _settings)
    return _settings


def get_settings() -> Settings:
    """Current settings, loading them on first use."""
    return load_settings()


def override_settings(**changes: Any) -> Settings:
    """Replace selected settings in-process (tests and the CLI use this)."""
    global _settings
    _settings = get_settings().model_copy(update=changes)
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None


def generate_env_template(output_file: str = ".env.template") -> str:
    """Write a .env template documenting every mcgate variable."""
    template_lines = [
        "# =============================================================================",
        "# MCGATE ENVIRONMENT VARIABLES TEMPLATE",
        "# =============================================================================",
        "# Copy to .env and customize as needed.",
        "",
    ]

    for var_name, var_info in ENVIRONMENT_VARIABLES.items():
        template_lines.append(f"# {var_info['description']}")
        if var_info.get("required", False):
            template_lines.append("# REQUIRED")
            template_lines.append(f"{var_name}=")
        else:
            template_lines.append(f"# Optional (default: {var_info['default']})")
            template_lines.append(f"# {var_name}={var_info['default']}")
        template_lines.append("")

    template_content = "\n".join(template_lines)
    with open(output_file, "w") as f:
        f.write(template_content)

    return template_content


def validate_env_vars() -> List[str]:
    """Return one message per variable that is missing or fails validation."""
    problems = []
    for var_name, var_info in ENVIRONMENT_VARIABLES.items():
        if var_info.get("required", False) and not os.getenv(var_name):
            problems.append(f"{var_name} is required")

    try:
        Settings(**_raw_values())
    except ValidationError as e:
        by_field = {info["field"]: name for name, info in ENVIRONMENT_VARIABLES.items()}
        for err in e.errors():
            field = str(err["loc"][0]) if err["loc"] else ""
            problems.append(f"{by_field.get(field, field)}: {err['msg']}")

    return problems


def get_env_summary() -> str:
    """Human-readable listing of variables and their effective values."""
    summary_lines = ["mcgate Environment Variables:", ""]
    for var_name, var_info in ENVIRONMENT_VARIABLES.items():
        status = "REQUIRED" if var_info.get("required", False) else "optional"
        current_val = os.getenv(var_name, var_info["default"])
        summary_lines.append(f"   • {var_name} ({status}) = {current_val}")
        summary_lines.append(f"     {var_info['description']}")
    return "\n".join(summary_lines)
