"""
qinfo - coherent entropy of finite-dimensional quantum states.

The toolkit works with density operators on tensor-product spaces and
measures how much information a state can carry:

- von Neumann, diagonal and relative entropies in bits
- coherent entropy S_c = log2 d - S and its conservation ledgers
- local coherent entropy under product unitaries, the gap G and local
  correlations L
- time correlations between two measurements separated by a channel,
  exactly and by Monte Carlo
- two-qubit concurrence and entanglement of formation
- a CLI that reproduces the summary tables of named states

Quick Start:
```python
from qinfo import w, partial_trace, coherent_entropy, chain_ledger

rho = w(3)
print(coherent_entropy(partial_trace(rho, 0)))   # 0.0817...
print(chain_ledger(rho).residual)                 # ~1e-16
```
"""

from .__version__ import __version__

from .core.types import (
    Bits,
    CheckResult,
    Direction,
    HilbertSpec,
    PartitionLabel,
    StateName,
    SuiteLevel,
    TcorrMode,
    check_partition,
    singletons,
)

from .core.config import (
    ConfigManager,
    OptimizerConfig,
    QInfoConfig,
    SamplingConfig,
)

from .core.errors import (
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

from .state import (
    DensityOperator,
    Spectrum,
    bell,
    bloch,
    eig_hermitian,
    ghz,
    make_named_state,
    maximally_mixed,
    partial_trace,
    random_density,
    random_unitary,
    tensor,
    w,
)

from .entropy import (
    binary_entropy,
    coherent_entropy,
    coherent_entropy_extremal,
    diagonal_entropy,
    equalizing_basis,
    relative_entropy,
    shannon_entropy,
    von_neumann,
)

from .multipartite import (
    InfoLedger,
    bipartite_ledger,
    chain_ledger,
    mutual_information,
    tripartite_ledger,
)

from .optimize import LocalCoherenceResult, optimize_diag_entropy, sc_local

from .timechannel import (
    EmpiricalDistribution,
    KrausChannel,
    ProjectiveMeasurement,
    Protocol,
    analyze_protocol,
    depolarizing_channel,
    mutual_information_12,
    optimal_protocol,
    protocol_distribution,
    qubit_tcorr_closed_form,
    random_protocol,
    sample_protocol,
)

from .entanglement import concurrence, entanglement_of_formation


__all__ = [
    # Version
    "__version__",

    # Core types
    "Bits",
    "CheckResult",
    "Direction",
    "HilbertSpec",
    "PartitionLabel",
    "StateName",
    "SuiteLevel",
    "TcorrMode",
    "check_partition",
    "singletons",

    # Configuration
    "ConfigManager",
    "OptimizerConfig",
    "QInfoConfig",
    "SamplingConfig",

    # Errors
    "ConvergenceWarning",
    "DimensionError",
    "DomainError",
    "InfiniteRelativeEntropy",
    "InvalidBasis",
    "InvalidChannel",
    "InvalidPartition",
    "InvalidState",
    "NumericalFailure",
    "QInfoError",
    "StateParseError",

    # States
    "DensityOperator",
    "Spectrum",
    "bell",
    "bloch",
    "eig_hermitian",
    "ghz",
    "make_named_state",
    "maximally_mixed",
    "partial_trace",
    "random_density",
    "random_unitary",
    "tensor",
    "w",

    # Entropies
    "binary_entropy",
    "coherent_entropy",
    "coherent_entropy_extremal",
    "diagonal_entropy",
    "equalizing_basis",
    "relative_entropy",
    "shannon_entropy",
    "von_neumann",

    # Ledgers
    "InfoLedger",
    "bipartite_ledger",
    "chain_ledger",
    "mutual_information",
    "tripartite_ledger",

    # Local coherence
    "LocalCoherenceResult",
    "optimize_diag_entropy",
    "sc_local",

    # Time correlations
    "EmpiricalDistribution",
    "KrausChannel",
    "ProjectiveMeasurement",
    "Protocol",
    "analyze_protocol",
    "depolarizing_channel",
    "mutual_information_12",
    "optimal_protocol",
    "protocol_distribution",
    "qubit_tcorr_closed_form",
    "random_protocol",
    "sample_protocol",

    # Entanglement
    "concurrence",
    "entanglement_of_formation",
]
