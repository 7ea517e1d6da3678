"""
Configuration loading.

    defaults.yaml (shipped)  <  TWODIV_CONFIG file  <  TWODIV_* variables  <  CLI flags

The CLI applies its own flags on top of what load_config returns.
"""

from __future__ import annotations

import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from .errors import ConfigError
from .models import HarnessConfig

logger = logging.getLogger(__name__)

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), "config", "defaults.yaml")

ENV_CONFIG = "TWODIV_CONFIG"
ENV_WORKERS = "TWODIV_WORKERS"
ENV_LOG_LEVEL = "TWODIV_LOG_LEVEL"


def load_environment(dotenv_path: Optional[str] = None) -> None:
    """Read a .env file (the working directory's by default) without clobbering set variables."""
    load_dotenv(dotenv_path, override=False)


def _read_yaml(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping, got {type(data).__name__}")
    return data


def load_config(path: Optional[str] = None) -> HarnessConfig:
    path = path or os.environ.get(ENV_CONFIG) or DEFAULTS_PATH
    logger.debug("loading config from %s", path)
    data = _read_yaml(path)

    workers = os.environ.get(ENV_WORKERS)
    if workers:
        data["workers"] = workers
    level = os.environ.get(ENV_LOG_LEVEL)
    if level:
        data["log_level"] = level.upper()

    try:
        return HarnessConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e
