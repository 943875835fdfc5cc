"""
Registry of named invariant checks.

Checks are plain functions registered with the @invariant_check decorator.
A check returns a (passed, message) pair, optionally followed by a details
mapping; an exception inside a check counts as a failure rather than
aborting the suite.
"""

import json
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from ..core.types import CheckResult, SuiteLevel

logger = logging.getLogger(__name__)

CheckFunc = Callable[[], Any]


class InvariantCheck:
    """A registered check function with its suite level."""

    def __init__(self, name: str, func: CheckFunc, level: SuiteLevel, description: str = ""):
        self.name = name
        self.func = func
        self.level = level
        self.description = description or (func.__doc__ or "").strip().split("\n")[0]

    def run(self) -> CheckResult:
        started = time.perf_counter()
        details: Dict[str, Any] = {}
        try:
            outcome = self.func()
            if isinstance(outcome, tuple):
                passed, message = bool(outcome[0]), str(outcome[1])
                if len(outcome) > 2 and isinstance(outcome[2], dict):
                    details = outcome[2]
            else:
                passed, message = bool(outcome), ""
        except Exception as e:
            passed, message = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - started
        return CheckResult(
            name=self.name,
            passed=passed,
            message=message,
            level=self.level,
            elapsed=elapsed,
            details=details,
        )


class ValidationReport(BaseModel):
    """Outcome of a suite run."""
    suite: SuiteLevel
    results: List[CheckResult] = Field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_summary(self) -> Dict[str, Any]:
        return {
            "suite": self.suite.value,
            "passed": self.passed,
            "n_checks": len(self.results),
            "n_failed": len(self.failures),
            "elapsed": self.elapsed,
            "checks": [
                {
                    "name": r.name,
                    "level": r.level.value,
                    "passed": r.passed,
                    "message": r.message,
                    "elapsed": r.elapsed,
                }
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_summary(), indent=2)


class CheckRegistry:
    """Named invariant checks grouped by suite level."""

    def __init__(self):
        self.checks: Dict[str, InvariantCheck] = {}
        self.logger = logging.getLogger(__name__)

    def register(self, check: InvariantCheck) -> None:
        if check.name in self.checks:
            self.logger.debug("Replacing invariant check %s", check.name)
        self.checks[check.name] = check

    def unregister(self, name: str) -> bool:
        return self.checks.pop(name, None) is not None

    def get(self, name: str) -> Optional[InvariantCheck]:
        return self.checks.get(name)

    def list_checks(self, suite: Union[SuiteLevel, str] = SuiteLevel.ALL) -> List[str]:
        """Names in registration order; the fast suite is a subset of the full one."""
        suite = SuiteLevel(suite)
        return [
            name for name, check in self.checks.items()
            if suite == SuiteLevel.ALL or check.level == SuiteLevel.FAST
        ]

    def run(self, suite: Union[SuiteLevel, str] = SuiteLevel.FAST,
            names: Optional[List[str]] = None) -> ValidationReport:
        suite = SuiteLevel(suite)
        selected = names if names is not None else self.list_checks(suite)
        started = time.perf_counter()
        results = []
        for name in selected:
            check = self.checks[name]
            self.logger.info("Running check %s", name)
            result = check.run()
            level = logging.DEBUG if result.passed else logging.WARNING
            self.logger.log(level, "check %s: %s %s", name,
                            "passed" if result.passed else "FAILED", result.message)
            results.append(result)
        return ValidationReport(suite=suite, results=results, elapsed=time.perf_counter() - started)


default_registry = CheckRegistry()


def invariant_check(func: Optional[CheckFunc] = None, *, name: Optional[str] = None,
                    level: SuiteLevel = SuiteLevel.FAST,
                    registry: Optional[CheckRegistry] = None):
    """
    Register a function as an invariant check.

    Usable bare (`@invariant_check`) or with options
    (`@invariant_check(level=SuiteLevel.ALL)`). The check name defaults to the
    function name.
    """
    def decorate(f: CheckFunc) -> CheckFunc:
        target = registry if registry is not None else default_registry
        target.register(InvariantCheck(name or f.__name__, f, level))
        return f

    if func is not None:
        return decorate(func)
    return decorate


__all__ = [
    "InvariantCheck", "ValidationReport", "CheckRegistry", "default_registry", "invariant_check",
]
