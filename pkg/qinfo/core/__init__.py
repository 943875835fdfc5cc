"""Shared types, configuration and errors."""

from .config import ConfigManager, OptimizerConfig, QInfoConfig, SamplingConfig
from .errors import (
    ConvergenceWarning,
    DimensionError,
    DomainError,
    InfiniteRelativeEntropy,
    InvalidBasis,
    InvalidChannel,
    InvalidPartition,
    InvalidState,
    NumericalFailure,
    QInfoError,
    StateParseError,
)
from .types import (
    Bits,
    CheckResult,
    Direction,
    HilbertSpec,
    OutputFormat,
    PartitionLabel,
    StartKind,
    StateName,
    SuiteLevel,
    TcorrMode,
    check_partition,
    singletons,
)
