"""
Two-qubit concurrence and entanglement of formation.

Wootters' closed form: with the spin-flipped state
rho~ = (sy x sy) rho* (sy x sy), let mu_1 >= ... >= mu_4 be the eigenvalues
of rho rho~. Then C = max(0, sqrt(mu_1) - sqrt(mu_2) - sqrt(mu_3) - sqrt(mu_4))
and E_f = H2((1 + sqrt(1 - C^2)) / 2).
"""

import logging

import numpy as np
from pydantic import BaseModel

from ..core.errors import DimensionError
from ..core.types import Bits
from ..entropy.measures import binary_entropy
from ..state.density import DensityOperator
from ..state.factory import PAULI_Y

logger = logging.getLogger(__name__)

SPIN_FLIP_CLAMP = 1e-12
_SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y)


class ConcurrenceResult(BaseModel):
    concurrence: float
    e_f: Bits


def entanglement_of_formation(c: float) -> Bits:
    """E_f as a function of the concurrence."""
    c = float(np.clip(c, 0.0, 1.0))
    if c == 0.0:
        return 0.0
    return binary_entropy((1.0 + np.sqrt(1.0 - c * c)) / 2.0)


def concurrence(rho: DensityOperator) -> ConcurrenceResult:
    """Concurrence and entanglement of formation of a two-qubit state."""
    if tuple(rho.dims) != (2, 2):
        raise DimensionError(f"Concurrence needs two qubits, got dims {list(rho.dims)}")
    flipped = _SPIN_FLIP @ rho.mat.conj() @ _SPIN_FLIP
    mu = np.real(np.linalg.eigvals(rho.mat @ flipped))
    if mu.min() < -SPIN_FLIP_CLAMP:
        logger.debug("Spin-flip spectrum has negative entry %.3e", mu.min())
    roots = np.sort(np.sqrt(np.clip(mu, 0.0, None)))[::-1]
    c = max(0.0, float(roots[0] - roots[1:].sum()))
    c = min(c, 1.0)
    return ConcurrenceResult(concurrence=c, e_f=entanglement_of_formation(c))


__all__ = ["ConcurrenceResult", "concurrence", "entanglement_of_formation"]
