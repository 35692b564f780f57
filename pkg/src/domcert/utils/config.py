"""
Configuration utilities for domcert
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import tomli
from pydantic import ValidationError

from domcert.core.errors import ConfigError
from domcert.core.schema import PipelineConfig

logger = logging.getLogger(__name__)

# Default configuration paths
DEFAULT_CONFIG_DIR = os.path.expanduser("~/.config/domcert")
CONFIG_FILE_NAME = "config.json"

# User defaults that `domcert config set` accepts, with their types
USER_KEYS: Dict[str, type] = {
    "tol": float,
    "max_iter": int,
    "samples": int,
    "seed": int,
    "report_dir": str,
}


def default_config_file() -> str:
    """User config file, honouring DOMCERT_CONFIG_DIR."""
    config_dir = os.getenv("DOMCERT_CONFIG_DIR") or DEFAULT_CONFIG_DIR
    return os.path.join(os.path.expanduser(config_dir), CONFIG_FILE_NAME)


class ConfigManager:
    """Manages the user defaults stored in ~/.config/domcert/config.json"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or default_config_file()
        self.config_dir = os.path.dirname(self.config_path)
        self._config: Dict[str, Any] = {}
        self._ensure_dirs()
        self._load_config()

    def _ensure_dirs(self) -> None:
        """Ensure the configuration directory exists"""
        os.makedirs(self.config_dir, exist_ok=True)

    def _load_config(self) -> None:
        """Load configuration from file or create default"""
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    self._config = json.load(f)
            except json.JSONDecodeError:
                logger.error(f"Error parsing config file: {self.config_path}")
                self._config = self._default_config()
        else:
            self._config = self._default_config()
            self._save_config()

    def _default_config(self) -> Dict[str, Any]:
        return {}

    def _save_config(self) -> None:
        """Save current configuration to file"""
        with open(self.config_path, "w", encoding="utf-8") as f:
            json.dump(self._config, f, indent=2, sort_keys=True)

    def get_config(self) -> Dict[str, Any]:
        """Get the complete configuration"""
        return self._config

    def set_config(self, key: str, value: Any) -> bool:
        """Set a configuration value and persist to file

        Args:
            key: Configuration key to set
            value: Value to set for the key, None removes the key

        Returns:
            bool: Success or failure
        """
        try:
            if value is None:
                self._config.pop(key, None)
            else:
                self._config[key] = value
            self._save_config()
            return True
        except OSError as e:
            logger.error(f"Error setting configuration {key}: {str(e)}")
            return False


def parse_user_value(key: str, raw: str) -> Any:
    """Convert a command-line string to the type of a user config key.

    Raises:
        ConfigError: for unknown keys or values of the wrong type
    """
    if key not in USER_KEYS:
        raise ConfigError(f"unknown configuration key {key!r}; expected one of {sorted(USER_KEYS)}")
    kind = USER_KEYS[key]
    try:
        value = kind(raw)
    except ValueError as e:
        raise ConfigError(f"invalid value for {key}: {raw!r}") from e
    if kind in (int, float) and value < 0:
        raise ConfigError(f"{key} must be nonnegative, got {raw!r}")
    return value


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a JSON or TOML file into a dict.

    Raises:
        ConfigError: if the file is missing or malformed
    """
    source = Path(path)
    try:
        if source.suffix == ".toml":
            with open(source, "rb") as f:
                return tomli.load(f)
        with open(source, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {source}: {e.strerror or e}") from e
    except (json.JSONDecodeError, tomli.TOMLDecodeError) as e:
        logger.error(f"Error parsing config file: {source}")
        raise ConfigError(f"malformed config {source}: {e}") from e


def validate_pipeline_config(data: Dict[str, Any]) -> PipelineConfig:
    try:
        return PipelineConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ConfigError(f"config schema violation at {where}: {first['msg']} ({e.error_count()} errors)") from e


def load_pipeline_config(path: Union[str, Path]) -> PipelineConfig:
    """Load and validate a pipeline config from JSON or TOML."""
    config = validate_pipeline_config(read_document(path))
    logger.debug(f"Loaded config {config.name or path}")
    return config


def resolve_config(
    config: PipelineConfig,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    samples: Optional[int] = None,
    user_defaults: Optional[Dict[str, Any]] = None,
) -> PipelineConfig:
    """Apply the precedence CLI flag > config file value > user default > built-in default.

    A value counts as set by the config file when its section and field were
    both present in the parsed document.
    """
    defaults = user_defaults or {}
    solver_set = config.solver.model_fields_set if "solver" in config.model_fields_set else set()
    sampling_set = config.sampling.model_fields_set if "sampling" in config.model_fields_set else set()

    def pick(flag: Any, in_file: bool, key: str) -> Any:
        if flag is not None:
            return flag
        if in_file:
            return None
        return defaults.get(key)

    solver_update: Dict[str, Any] = {}
    sampling_update: Dict[str, Any] = {}
    for field, flag, key in (("tol", tol, "tol"), ("max_iter", max_iter, "max_iter"), ("seed", seed, "seed")):
        value = pick(flag, field in solver_set, key)
        if value is not None:
            solver_update[field] = value
    for field, flag, key in (("pairs", samples, "samples"), ("seed", seed, "seed")):
        value = pick(flag, field in sampling_set, key)
        if value is not None:
            sampling_update[field] = value

    if not solver_update and not sampling_update:
        return config
    data = config.model_dump(mode="json", exclude_unset=True)
    data["solver"] = {**config.solver.model_dump(mode="json", exclude_unset=True), **solver_update}
    data["sampling"] = {**config.sampling.model_dump(mode="json", exclude_unset=True), **sampling_update}
    return validate_pipeline_config(data)
