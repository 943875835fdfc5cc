"""Unitary parameterization, multi-start search and local coherent entropy."""

from .local import LocalCoherenceResult, optimize_diag_entropy, sc_local, search_diag_entropy
from .search import DiagonalEntropyObjective, RestartTrace, SearchOutcome, extremize
from .unitary import UnitaryPoint, gauge_direction, hermitian_basis
