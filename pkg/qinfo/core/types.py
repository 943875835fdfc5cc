"""
Core types and data structures for qinfo.

This module defines the enums and small pydantic records shared by every
subpackage: Hilbert-space layouts, partition labels, optimizer directions,
output formats and the result record produced by invariant checks.
"""

import numbers
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator

from .errors import DimensionError, InvalidPartition

# Entropies and informations are plain floats measured in bits.
Bits = float

# Values in [-BITS_CLAMP, 0) are rounding noise and are reported as 0.
BITS_CLAMP = 1e-9

_PART_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def as_dimension(value: Any) -> int:
    """Integer dimension from `value`; fractional values are rejected, not truncated."""
    try:
        d = int(value)
    except (TypeError, ValueError) as e:
        raise DimensionError(f"Dimension {value!r} is not an integer") from e
    if isinstance(value, numbers.Real) and value != d:
        raise DimensionError(f"Dimension {value!r} is not an integer")
    return d


class StateName(str, Enum):
    """Named states understood by the state factory."""
    BELL = "bell"
    GHZ3 = "ghz3"
    W3 = "w3"
    GHZ = "ghz"
    W = "w"
    PURE_QUBIT = "pure_qubit"
    BLOCH = "bloch"
    MAXIMALLY_MIXED = "maximally_mixed"
    DIAG = "diag"


class Direction(str, Enum):
    """Direction of a diagonal-entropy extremization."""
    MAX = "max"
    MIN = "min"


class StartKind(str, Enum):
    """How an optimizer restart was initialised."""
    IDENTITY = "identity"
    RANDOM = "random"


class TcorrMode(str, Enum):
    """Evaluation mode of the time-correlation command."""
    ANALYTIC = "analytic"
    MC = "mc"


class OutputFormat(str, Enum):
    """Rendering formats for tables."""
    MARKDOWN = "markdown"
    CSV = "csv"
    RICH = "rich"
    JSON = "json"


class SuiteLevel(str, Enum):
    """Invariant suites run by `qinfo validate`."""
    FAST = "fast"
    ALL = "all"


class HilbertSpec(BaseModel):
    """Ordered subsystem dimensions of a tensor-product Hilbert space."""
    dims: Tuple[int, ...]

    class Config:
        frozen = True

    @field_validator('dims', mode='before')
    @classmethod
    def validate_dims(cls, v):
        """Every subsystem must have dimension at least 2."""
        dims = tuple(as_dimension(d) for d in v)
        if not dims:
            raise DimensionError("A Hilbert space needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise DimensionError(f"Subsystem dimensions must be >= 2, got {list(dims)}")
        return dims

    @property
    def n_parts(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def sub(self, indices: Sequence[int]) -> "HilbertSpec":
        """Layout of the factors selected by `indices`, in original order."""
        return HilbertSpec(dims=tuple(self.dims[i] for i in sorted(indices)))


class PartitionLabel(BaseModel):
    """A nonempty set of subsystem positions selecting a marginal."""
    indices: Tuple[int, ...]

    class Config:
        frozen = True

    @field_validator('indices', mode='before')
    @classmethod
    def validate_indices(cls, v):
        """Sort, deduplicate and reject empty or negative labels."""
        if isinstance(v, int):
            v = (v,)
        indices = tuple(sorted({int(i) for i in v}))
        if not indices:
            raise InvalidPartition("Partition label must not be empty")
        if indices[0] < 0:
            raise InvalidPartition(f"Negative subsystem index in {list(indices)}")
        return indices

    @classmethod
    def of(cls, *indices: int) -> "PartitionLabel":
        return cls(indices=indices)

    def check_within(self, n_parts: int) -> None:
        """Raise InvalidPartition when the label exceeds an `n_parts` system."""
        if self.indices[-1] >= n_parts:
            raise InvalidPartition(
                f"Label {list(self.indices)} is out of range for {n_parts} subsystems"
            )

    def overlaps(self, other: "PartitionLabel") -> bool:
        return bool(set(self.indices) & set(other.indices))

    def union(self, other: "PartitionLabel") -> "PartitionLabel":
        return PartitionLabel(indices=self.indices + other.indices)

    @property
    def name(self) -> str:
        """Letter name such as `AB`; falls back to digits beyond 26 parts."""
        if self.indices[-1] < len(_PART_LETTERS):
            return "".join(_PART_LETTERS[i] for i in self.indices)
        return "".join(str(i) for i in self.indices)

    def __str__(self) -> str:
        return self.name


def check_partition(parts: Sequence[PartitionLabel], n_parts: int) -> None:
    """Require `parts` to be pairwise disjoint and to cover all `n_parts` subsystems."""
    if not parts:
        raise InvalidPartition("A partition needs at least one part")
    seen: set = set()
    for part in parts:
        part.check_within(n_parts)
        if seen & set(part.indices):
            raise InvalidPartition(f"Part {part.name} overlaps an earlier part")
        seen |= set(part.indices)
    if seen != set(range(n_parts)):
        missing = sorted(set(range(n_parts)) - seen)
        raise InvalidPartition(f"Partition does not cover subsystems {missing}")


def singletons(n_parts: int) -> List[PartitionLabel]:
    """The finest partition `0|1|...|n-1`."""
    return [PartitionLabel.of(i) for i in range(n_parts)]


class CheckResult(BaseModel):
    """Outcome of one named invariant check."""
    name: str
    passed: bool
    message: str = ""
    level: SuiteLevel = SuiteLevel.FAST
    elapsed: float = 0.0
    details: Dict[str, Any] = Field(default_factory=dict)
    timestamp: datetime = Field(default_factory=datetime.now)


# Export all types for easier imports
__all__ = [
    "Bits", "BITS_CLAMP", "as_dimension", "StateName", "Direction", "StartKind", "TcorrMode",
    "OutputFormat", "SuiteLevel", "HilbertSpec", "PartitionLabel",
    "check_partition", "singletons", "CheckResult",
]
