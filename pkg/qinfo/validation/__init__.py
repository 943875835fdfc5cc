"""Invariant suites behind `qinfo validate`."""

from typing import List, Optional, Union

from ..core.types import SuiteLevel
from . import checks  # noqa: F401  registers the built-in checks
from .registry import (
    CheckRegistry,
    InvariantCheck,
    ValidationReport,
    default_registry,
    invariant_check,
)


def run_suite(suite: Union[SuiteLevel, str] = SuiteLevel.FAST,
              names: Optional[List[str]] = None) -> ValidationReport:
    """Run the built-in checks of `suite` (or just `names`)."""
    return default_registry.run(suite, names)


__all__ = [
    "CheckRegistry", "InvariantCheck", "ValidationReport", "default_registry",
    "invariant_check", "run_suite",
]
