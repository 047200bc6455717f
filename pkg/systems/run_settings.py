"""
Run Settings for verification campaigns

This module provides the configuration of one toolkit run:
- Setting definitions with type, range and choice validation
- Defaults taken from config.py
- Command-line overrides merged into a frozen RunConfig
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

from config import (DEFAULT_TRIALS, DEFAULT_SEED, DEFAULT_GRID, MIN_GRID, DEFAULT_REFINE_ITERS,
                    DEFAULT_CERTIFY_TOLERANCE, SCALAR_MODES, OUTPUT_FORMATS,
                    DEFAULT_OUTPUT_FORMAT, DEFAULT_LOG_LEVEL, WORKER_BACKENDS,
                    DEFAULT_WORKER_BACKEND)
from coefficients.class_ids import ClassId
from utils.errors import UsageError

logger = logging.getLogger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


class SettingType(Enum):
    """Types of settings"""
    BOOLEAN = "boolean"
    INTEGER = "integer"
    FLOAT = "float"
    STRING = "string"
    CHOICE = "choice"


@dataclass
class SettingDefinition:
    """Definition of a setting"""
    key: str
    name: str
    description: str
    setting_type: SettingType
    default_value: Any
    min_value: Optional[Any] = None
    max_value: Optional[Any] = None
    choices: Optional[List[Any]] = None
    exclusive_min: bool = False


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one run"""
    class_id: Optional[ClassId] = None
    functional: str = "all"
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    grid: int = DEFAULT_GRID
    refine_iters: int = DEFAULT_REFINE_ITERS
    tol: float = DEFAULT_CERTIFY_TOLERANCE
    mode: str = "exact"
    output: str = DEFAULT_OUTPUT_FORMAT
    out_path: Optional[str] = None
    threads: Optional[int] = None
    workers: str = DEFAULT_WORKER_BACKEND
    sampler: str = "blaschke_mix"
    explore_true_h23: bool = False
    log_level: str = DEFAULT_LOG_LEVEL


class RunSettings:
    """Setting table and validation for RunConfig"""

    def __init__(self):
        self.setting_definitions: Dict[str, SettingDefinition] = {}
        self.settings: Dict[str, Any] = {}

        self._initialize_setting_definitions()
        self._load_default_settings()

        logger.debug("Run settings initialized")

    def _initialize_setting_definitions(self) -> None:
        """Initialize all setting definitions"""
        definitions = [
            SettingDefinition("class_id", "Class", "Sakaguchi subclass (sse or ssl)",
                              SettingType.CHOICE, None, choices=[None, *ClassId]),
            SettingDefinition("functional", "Functional", "Functional id or 'all'",
                              SettingType.STRING, "all"),
            SettingDefinition("trials", "Trials", "Sampled class members per functional",
                              SettingType.INTEGER, DEFAULT_TRIALS, min_value=1),
            SettingDefinition("seed", "Seed", "Seed of the sample streams",
                              SettingType.INTEGER, DEFAULT_SEED, min_value=0,
                              max_value=2 ** 64 - 1),
            SettingDefinition("grid", "Grid", "Optimizer grid points per axis",
                              SettingType.INTEGER, DEFAULT_GRID, min_value=MIN_GRID),
            SettingDefinition("refine_iters", "Refinement", "Golden-section iterations",
                              SettingType.INTEGER, DEFAULT_REFINE_ITERS, min_value=1),
            SettingDefinition("tol", "Tolerance", "Certification tolerance",
                              SettingType.FLOAT, DEFAULT_CERTIFY_TOLERANCE, min_value=0.0,
                              exclusive_min=True),
            SettingDefinition("mode", "Scalar mode", "Exact or float arithmetic",
                              SettingType.CHOICE, "exact", choices=SCALAR_MODES),
            SettingDefinition("output", "Output", "Report format",
                              SettingType.CHOICE, DEFAULT_OUTPUT_FORMAT, choices=OUTPUT_FORMATS),
            SettingDefinition("out_path", "Output path", "Report file, stdout when unset",
                              SettingType.STRING, None),
            SettingDefinition("threads", "Threads", "Worker count for sampling",
                              SettingType.INTEGER, None, min_value=1),
            SettingDefinition("workers", "Workers", "Process or thread pool for sampling",
                              SettingType.CHOICE, DEFAULT_WORKER_BACKEND, choices=WORKER_BACKENDS),
            SettingDefinition("sampler", "Sampler", "Schwarz or Caratheodory sampler",
                              SettingType.CHOICE, "blaschke_mix",
                              choices=["blaschke_mix", "herglotz_mix"]),
            SettingDefinition("explore_true_h23", "Explore H23", "Also sample A3 A5 - A4^2",
                              SettingType.BOOLEAN, False),
            SettingDefinition("log_level", "Log level", "Logging verbosity",
                              SettingType.CHOICE, DEFAULT_LOG_LEVEL, choices=LOG_LEVELS),
        ]
        for definition in definitions:
            self.setting_definitions[definition.key] = definition

    def _load_default_settings(self) -> None:
        for key, definition in self.setting_definitions.items():
            self.settings[key] = definition.default_value

    def validate_setting_value(self, key: str, value: Any) -> bool:
        """Validate a value against its definition; None means 'unset' for optional settings"""
        definition = self.setting_definitions.get(key)
        if definition is None:
            return False
        if value is None:
            return definition.default_value is None

        if definition.setting_type == SettingType.BOOLEAN:
            return isinstance(value, bool)

        if definition.setting_type == SettingType.INTEGER:
            if not isinstance(value, int) or isinstance(value, bool):
                return False
        elif definition.setting_type == SettingType.FLOAT:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                return False
        elif definition.setting_type == SettingType.STRING:
            return isinstance(value, str)
        elif definition.setting_type == SettingType.CHOICE:
            return value in definition.choices

        if definition.min_value is not None:
            if value < definition.min_value:
                return False
            if definition.exclusive_min and value == definition.min_value:
                return False
        if definition.max_value is not None and value > definition.max_value:
            return False
        return True

    def set_setting(self, key: str, value: Any) -> bool:
        """Set a setting value; invalid values are logged and rejected"""
        if not self.validate_setting_value(key, value):
            logger.warning(f"Invalid value for setting {key}: {value!r}")
            return False
        self.settings[key] = value
        return True

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        """Apply several values at once; the first invalid one is a usage error"""
        for key, value in overrides.items():
            if key not in self.setting_definitions:
                raise UsageError(f"unknown setting {key!r}")
            definition = self.setting_definitions[key]
            if not self.validate_setting_value(key, value):
                hint = ""
                if definition.choices:
                    hint = ", ".join(str(getattr(c, "value", c)) for c in definition.choices
                                     if c is not None)
                elif definition.min_value is not None:
                    hint = f"{definition.name} >= {definition.min_value}"
                raise UsageError(f"invalid {definition.name.lower()}: {value!r}", example=hint)
            self.settings[key] = value

    def build_config(self) -> RunConfig:
        return RunConfig(**self.settings)


def build_run_config(**overrides: Any) -> RunConfig:
    """RunConfig with defaults from config.py and the given overrides"""
    settings = RunSettings()
    settings.apply_overrides({k: v for k, v in overrides.items() if v is not None})
    return settings.build_config()
