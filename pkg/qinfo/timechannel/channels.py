"""
Projective measurements and Kraus channels.
"""

import logging
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.errors import DimensionError, DomainError, InvalidChannel
from ..state.density import DensityOperator, check_unitary

logger = logging.getLogger(__name__)

COMPLETENESS_TOL = 1e-9


class ProjectiveMeasurement(BaseModel):
    """Measurement in an orthonormal basis; outcome s is the column index."""
    basis: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='before')
    @classmethod
    def validate_basis(cls, values):
        """Basis columns must be orthonormal."""
        if isinstance(values, dict):
            basis = check_unitary(values.get('basis'), what="measurement basis").copy()
            basis.setflags(write=False)
            values = {'basis': basis}
        return values

    @classmethod
    def computational(cls, d: int) -> 'ProjectiveMeasurement':
        return cls(basis=np.eye(d, dtype=complex))

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    def projector(self, s: int) -> np.ndarray:
        v = self.basis[:, s]
        return np.outer(v, v.conj())

    def projectors(self) -> List[np.ndarray]:
        return [self.projector(s) for s in range(self.d)]

    def probabilities(self, rho_mat: np.ndarray) -> np.ndarray:
        """Tr(rho P^s) for every outcome s."""
        p = np.real(np.einsum('is,ij,js->s', self.basis.conj(), rho_mat, self.basis))
        return np.clip(p, 0.0, None)


class KrausChannel(BaseModel):
    """rho -> sum_m M_m rho M_m† with sum_m M_m† M_m = I."""
    ops: List[np.ndarray]

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='before')
    @classmethod
    def validate_completeness(cls, values):
        """All operators square of one size, and complete."""
        if not isinstance(values, dict):
            return values
        ops = [np.array(op, dtype=complex) for op in values.get('ops') or []]
        if not ops:
            raise InvalidChannel("A Kraus channel needs at least one operator")
        d = ops[0].shape[0]
        for op in ops:
            if op.shape != (d, d):
                raise InvalidChannel(f"Kraus operator shape {op.shape} differs from ({d}, {d})")
        err = completeness_error(ops)
        if err > COMPLETENESS_TOL:
            raise InvalidChannel(f"Kraus operators are not complete (error {err:.3e})")
        for op in ops:
            op.setflags(write=False)
        return {'ops': ops}

    @property
    def d(self) -> int:
        return self.ops[0].shape[0]

    def apply(self, rho_mat: np.ndarray) -> np.ndarray:
        rho_mat = np.asarray(rho_mat, dtype=complex)
        if rho_mat.shape != (self.d, self.d):
            raise DimensionError(f"Channel on {self.d} dims applied to shape {rho_mat.shape}")
        return sum(m @ rho_mat @ m.conj().T for m in self.ops)

    def apply_state(self, rho: DensityOperator) -> DensityOperator:
        return DensityOperator(space=rho.space, mat=self.apply(rho.mat))


def completeness_error(ops: Sequence[np.ndarray]) -> float:
    """Max-abs deviation of sum M† M from the identity."""
    d = ops[0].shape[0]
    accum = np.zeros((d, d), dtype=complex)
    for op in ops:
        accum += op.conj().T @ op
    return float(np.max(np.abs(accum - np.eye(d))))


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(ops=[np.eye(d, dtype=complex)])


def weyl_operator(d: int, a: int, b: int) -> np.ndarray:
    """X^a Z^b with X|k> = |k+1 mod d> and Z|k> = exp(2 pi i k/d)|k>."""
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)


def depolarizing_channel(d: int, shrink: float) -> KrausChannel:
    """rho -> shrink rho + (1 - shrink) I/d, as d^2 weighted Weyl operators."""
    if not 0.0 <= shrink <= 1.0:
        raise DomainError(f"Depolarizing shrink must lie in [0, 1], got {shrink}")
    if d < 2:
        raise DomainError(f"Depolarizing channel needs d >= 2, got {d}")
    noise = (1.0 - shrink) / d ** 2
    ops = []
    for a in range(d):
        for b in range(d):
            weight = shrink + noise if (a, b) == (0, 0) else noise
            if weight > 0:
                ops.append(np.sqrt(weight) * weyl_operator(d, a, b))
    return KrausChannel(ops=ops)


__all__ = [
    "ProjectiveMeasurement", "KrausChannel", "completeness_error", "identity_channel",
    "weyl_operator", "depolarizing_channel", "COMPLETENESS_TOL",
]
