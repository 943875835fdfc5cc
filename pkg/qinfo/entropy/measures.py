"""
Entropy functionals in bits.

Every function here is pure. Probabilities below ZERO_THRESHOLD contribute
nothing, which implements the 0 log 0 = 0 convention without taking limits.
"""

import logging
from typing import Optional

import numpy as np

from ..core.errors import DimensionError, DomainError, InfiniteRelativeEntropy
from ..core.types import BITS_CLAMP, Bits
from ..state.density import DensityOperator, check_unitary

logger = logging.getLogger(__name__)

ZERO_THRESHOLD = 1e-14
SUPPORT_THRESHOLD = 1e-12


def clamp_bits(value: float) -> Bits:
    """Report rounding noise just below zero as exactly zero."""
    if -BITS_CLAMP <= value < 0:
        return 0.0
    return float(value)


def shannon_entropy(p, axis: Optional[int] = None):
    """-sum p log2 p; with `axis` given, a batch of distributions is reduced along it."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    safe = np.where(p > ZERO_THRESHOLD, p, 1.0)
    terms = np.where(p > ZERO_THRESHOLD, -p * np.log2(safe), 0.0)
    if axis is None:
        return clamp_bits(float(terms.sum()))
    return np.clip(terms.sum(axis=axis), 0.0, None)


def von_neumann(rho: DensityOperator) -> Bits:
    """S(rho) = -Tr(rho log2 rho)."""
    return shannon_entropy(rho.eigenvalues)


def diagonal_distribution(rho: DensityOperator, basis: Optional[np.ndarray] = None) -> np.ndarray:
    """Outcome probabilities diag(U† rho U) of a projective measurement in `basis`."""
    if basis is None:
        return np.clip(np.real(np.diag(rho.mat)), 0.0, None)
    u = check_unitary(basis)
    if u.shape[0] != rho.d:
        raise DimensionError(f"Basis of dimension {u.shape[0]} for a {rho.d}-dim state")
    p = np.real(np.einsum('ik,ij,jk->k', u.conj(), rho.mat, u))
    return np.clip(p, 0.0, None)


def diagonal_entropy(rho: DensityOperator, basis: Optional[np.ndarray] = None) -> Bits:
    """Shannon entropy of the diagonal of rho in `basis` (computational basis by default)."""
    return shannon_entropy(diagonal_distribution(rho, basis))


def _log2_on_support(rho: DensityOperator):
    evals, evecs = np.linalg.eigh(rho.mat)
    support = evals > SUPPORT_THRESHOLD
    logs = np.where(support, np.log2(np.where(support, evals, 1.0)), 0.0)
    return evals, evecs, support, (evecs * logs) @ evecs.conj().T


def relative_entropy(a: DensityOperator, b: DensityOperator) -> Bits:
    """S(a||b) = Tr[a (log2 a - log2 b)]."""
    if a.d != b.d:
        raise DimensionError(f"Relative entropy of {a.d}-dim and {b.d}-dim states")

    _, b_vecs, b_support, log_b = _log2_on_support(b)
    kernel = b_vecs[:, ~b_support]
    if kernel.size:
        leak = float(np.real(np.trace(kernel.conj().T @ a.mat @ kernel)))
        if leak > SUPPORT_THRESHOLD:
            raise InfiniteRelativeEntropy(
                f"Support of the first state leaks {leak:.3e} outside the second"
            )

    neg_entropy_a = -von_neumann(a)
    cross = float(np.real(np.trace(a.mat @ log_b)))
    return clamp_bits(neg_entropy_a - cross)


def coherent_entropy(rho: DensityOperator) -> Bits:
    """S_c(rho) = log2 d - S(rho)."""
    return clamp_bits(float(np.log2(rho.d)) - von_neumann(rho))


def binary_entropy(x: float) -> Bits:
    """H2(x) = -x log2 x - (1-x) log2 (1-x)."""
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"Binary entropy needs x in [0, 1], got {x}")
    return shannon_entropy([x, 1.0 - x])


__all__ = [
    "ZERO_THRESHOLD", "SUPPORT_THRESHOLD", "clamp_bits", "shannon_entropy",
    "von_neumann", "diagonal_distribution", "diagonal_entropy", "relative_entropy",
    "coherent_entropy", "binary_entropy",
]
