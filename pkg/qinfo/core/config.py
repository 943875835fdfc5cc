"""
Configuration management for qinfo.

This module provides the optimizer and sampling settings shared by the
library and the CLI, the environment-aware top-level settings object, and
a small manager that finds, loads, merges and validates configuration files
in JSON, YAML or TOML.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import toml
import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings

# Load a project-level .env before any settings class is instantiated. Values
# already exported in the real environment win.
try:
    from dotenv import load_dotenv  # type: ignore

    load_dotenv(override=False)
except ModuleNotFoundError:
    pass

logger = logging.getLogger(__name__)


class OptimizerConfig(BaseModel):
    """Settings of the multi-start unitary search."""
    restarts: int = 32
    max_iters: int = 2000
    step_tolerance: float = 1e-9
    objective_tolerance: float = 1e-8
    seed: int = 0
    fd_step: float = 1e-5          # central finite-difference step
    initial_step: float = 1e-2     # first step of the coordinate polish
    threads: int = 1

    @field_validator('restarts', 'max_iters', 'threads')
    @classmethod
    def validate_positive_count(cls, v):
        """Counts must be at least one."""
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    @field_validator('step_tolerance', 'objective_tolerance', 'fd_step', 'initial_step')
    @classmethod
    def validate_positive_real(cls, v):
        """Tolerances and steps must be strictly positive."""
        if not v > 0:
            raise ValueError("must be > 0")
        return v


class SamplingConfig(BaseModel):
    """Settings of the Monte Carlo protocol sampler."""
    n_samples: int = 1_000_000
    seed: int = 0
    shards: int = 1

    @field_validator('n_samples', 'shards')
    @classmethod
    def validate_positive_count(cls, v):
        """Counts must be at least one."""
        if v < 1:
            raise ValueError("must be >= 1")
        return v


class QInfoConfig(BaseSettings):
    """Top-level settings, overridable from QINFO_* environment variables."""

    seed: int = 0
    threads: int = 1
    logging_level: str = "WARNING"
    table_precision: int = 6

    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)

    class Config:
        env_file = ".env"
        env_prefix = "QINFO_"
        case_sensitive = False
        extra = "ignore"

    @field_validator('threads')
    @classmethod
    def validate_threads(cls, v):
        """Thread count must be at least one."""
        if v < 1:
            raise ValueError("threads must be >= 1")
        return v

    @field_validator('table_precision')
    @classmethod
    def validate_precision(cls, v):
        """Table precision must lie in 0..15."""
        if not 0 <= v <= 15:
            raise ValueError("table_precision must be between 0 and 15")
        return v

    @field_validator('logging_level')
    @classmethod
    def validate_logging_level(cls, v):
        """Logging level must be a standard level name."""
        level = str(v).upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown logging level: {v}")
        return level

    def model_post_init(self, __context) -> None:
        """Propagate non-default top-level seed and threads into sub-configs."""
        if self.seed != 0:
            if self.optimizer.seed == 0:
                self.optimizer.seed = self.seed
            if self.sampling.seed == 0:
                self.sampling.seed = self.seed
        if self.threads != 1 and self.optimizer.threads == 1:
            self.optimizer.threads = self.threads

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return self.model_dump()

    def to_json(self) -> str:
        """Convert configuration to JSON string."""
        return self.model_dump_json()

    def save_to_file(self, path: Union[str, Path]) -> None:
        """Save configuration to file; the suffix selects the format."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        if path.suffix.lower() in ['.yaml', '.yml']:
            with open(path, 'w') as f:
                yaml.dump(self.to_dict(), f, default_flow_style=False)
        elif path.suffix.lower() == '.toml':
            with open(path, 'w') as f:
                toml.dump(self.to_dict(), f)
        else:
            with open(path, 'w') as f:
                json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'QInfoConfig':
        """Load configuration from file."""
        path = Path(path)

        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")

        with open(path, 'r') as f:
            content = f.read()

        suffix = path.suffix.lower()
        if suffix == '.json':
            data = json.loads(content)
        elif suffix in ['.yaml', '.yml']:
            data = yaml.safe_load(content)
        elif suffix == '.toml':
            data = toml.loads(content)
        else:
            # Unknown suffix: sniff the content
            try:
                data = json.loads(content)
            except json.JSONDecodeError:
                try:
                    data = yaml.safe_load(content)
                except yaml.YAMLError:
                    data = toml.loads(content)

        if not isinstance(data, dict):
            raise ValueError(f"Configuration file {path} does not hold a mapping")
        logger.debug("Loaded configuration from %s", path)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'QInfoConfig':
        """Create configuration from dictionary."""
        return cls(**data)


class ConfigManager:
    """Finds, loads, merges and validates qinfo configuration."""

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self.config_path = Path(config_path) if config_path else None
        self.config: Optional[QInfoConfig] = None
        self.logger = logging.getLogger(__name__)

    def load(self, config_path: Optional[Union[str, Path]] = None) -> QInfoConfig:
        """Load configuration from an explicit path, a default location, or defaults."""
        if config_path:
            self.config_path = Path(config_path)

        if self.config_path:
            self.config = QInfoConfig.from_file(self.config_path)
        else:
            found_path = self.find_config_file()
            if found_path:
                self.logger.debug("Using configuration file %s", found_path)
                self.config = QInfoConfig.from_file(found_path)
                self.config_path = found_path
            else:
                self.config = QInfoConfig()

        return self.config

    def get_config(self) -> QInfoConfig:
        """Get current configuration, loading if necessary."""
        if self.config is None:
            return self.load()
        return self.config

    def update_config(self, updates: Dict[str, Any]) -> QInfoConfig:
        """Deep-merge `updates` into the current configuration."""
        current = self.get_config().to_dict()
        self.config = QInfoConfig.from_dict(deep_merge(current, updates))
        return self.config

    @staticmethod
    def get_default_config_paths() -> List[Path]:
        """Get list of default configuration file paths to search."""
        names = []
        for prefix in ("", "."):
            for suffix in ("json", "yaml", "yml", "toml"):
                names.append(Path(f"{prefix}qinfo_config.{suffix}"))
        return names

    @classmethod
    def find_config_file(cls) -> Optional[Path]:
        """Find configuration file in default locations."""
        for path in cls.get_default_config_paths():
            if path.exists():
                return path
        return None

    @staticmethod
    def validate_config(config: QInfoConfig) -> List[str]:
        """Return human-readable issues that pydantic validation does not catch."""
        issues = []
        opt = config.optimizer
        if opt.fd_step >= opt.initial_step:
            issues.append(
                f"optimizer.fd_step ({opt.fd_step}) should be smaller than "
                f"optimizer.initial_step ({opt.initial_step})"
            )
        if opt.step_tolerance >= opt.initial_step:
            issues.append(
                f"optimizer.step_tolerance ({opt.step_tolerance}) must be smaller than "
                f"optimizer.initial_step ({opt.initial_step})"
            )
        if config.sampling.shards > config.sampling.n_samples:
            issues.append(
                f"sampling.shards ({config.sampling.shards}) exceeds "
                f"sampling.n_samples ({config.sampling.n_samples})"
            )
        return issues

    @staticmethod
    def merge_configs(base_config: QInfoConfig, override: Dict[str, Any]) -> QInfoConfig:
        """Merge an override mapping into a configuration, override taking precedence."""
        return QInfoConfig.from_dict(deep_merge(base_config.to_dict(), override))


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge two dictionaries."""
    result = base.copy()
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result


__all__ = [
    "OptimizerConfig", "SamplingConfig", "QInfoConfig", "ConfigManager", "deep_merge",
]
