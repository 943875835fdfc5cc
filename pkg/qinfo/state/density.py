"""
Density operators over tensor-product Hilbert spaces.

A DensityOperator is validated once at construction (Hermitian, unit trace,
positive semidefinite within fixed tolerances) and is immutable afterwards:
its matrix is stored read-only, and every operation returns a new value.
"""

import logging
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.errors import DimensionError, InvalidBasis, InvalidState, NumericalFailure
from ..core.types import HilbertSpec, PartitionLabel

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGEN_CLAMP = 1e-10
SPECTRUM_TOL = 1e-9
UNITARY_TOL = 1e-9


def unitarity_error(u: np.ndarray) -> float:
    """Max-abs deviation of U†U from the identity."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return float("inf")
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def check_unitary(u: np.ndarray, tol: float = UNITARY_TOL, what: str = "basis") -> np.ndarray:
    """Return `u` as a complex array or raise InvalidBasis."""
    u = np.asarray(u, dtype=complex)
    err = unitarity_error(u)
    if err > tol:
        raise InvalidBasis(f"{what} is not unitary (error {err:.3e} > {tol:.0e})")
    return u


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


class DensityOperator(BaseModel):
    """Hermitian, positive semidefinite, unit-trace matrix with declared subsystem dims."""
    space: HilbertSpec
    mat: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='before')
    @classmethod
    def validate_density(cls, values):
        """Check the density-operator invariants and clamp tiny negative eigenvalues."""
        if not isinstance(values, dict):
            return values
        space = values.get('space')
        if space is None:
            raise InvalidState("DensityOperator needs a space")
        if not isinstance(space, HilbertSpec):
            dims = space.get('dims') if isinstance(space, dict) else space
            space = HilbertSpec(dims=dims)

        try:
            mat = np.array(values.get('mat'), dtype=complex)
        except (TypeError, ValueError) as e:
            raise InvalidState(f"Matrix is not numeric: {e}") from e
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvalidState(f"Density matrix must be square, got shape {mat.shape}")
        if mat.shape[0] != space.total_dim:
            raise DimensionError(
                f"Matrix dimension {mat.shape[0]} does not match dims {list(space.dims)}"
            )
        if not np.all(np.isfinite(mat)):
            raise InvalidState("Density matrix has non-finite entries")

        herm_err = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_err > HERMITIAN_TOL:
            raise InvalidState(f"Matrix is not Hermitian (error {herm_err:.3e})")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidState(f"Trace is {trace.real:.12g}, expected 1")

        mat = 0.5 * (mat + mat.conj().T)
        try:
            evals, evecs = np.linalg.eigh(mat)
        except np.linalg.LinAlgError as e:
            raise NumericalFailure(f"Eigensolver failed during validation: {e}") from e
        if evals[0] < -EIGEN_CLAMP:
            raise InvalidState(f"Matrix has negative eigenvalue {evals[0]:.3e}")
        if evals[0] < 0:
            evals = np.clip(evals, 0.0, None)
            mat = (evecs * evals) @ evecs.conj().T
            mat = mat / np.trace(mat).real

        return {'space': space, 'mat': _freeze(mat)}

    @classmethod
    def from_matrix(cls, mat: np.ndarray, dims: Optional[Sequence[int]] = None) -> 'DensityOperator':
        """Validate `mat`; a single subsystem of full dimension is assumed when `dims` is omitted."""
        mat = np.asarray(mat, dtype=complex)
        if dims is None:
            dims = (mat.shape[0],) if mat.ndim == 2 else ()
        return cls(space=HilbertSpec(dims=dims), mat=mat)

    @classmethod
    def from_ket(cls, ket: Sequence[complex], dims: Optional[Sequence[int]] = None) -> 'DensityOperator':
        """Projector onto the normalised vector `ket`."""
        psi = np.asarray(ket, dtype=complex).reshape(-1)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidState("Zero vector is not a state")
        psi = psi / norm
        return cls.from_matrix(np.outer(psi, psi.conj()), dims)

    @property
    def dims(self):
        return self.space.dims

    @property
    def d(self) -> int:
        return self.space.total_dim

    @property
    def n_parts(self) -> int:
        return self.space.n_parts

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order, clamped at zero."""
        return _freeze(np.clip(np.linalg.eigvalsh(self.mat)[::-1], 0.0, None))

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues > 1e-12))

    def with_dims(self, dims: Sequence[int]) -> 'DensityOperator':
        """Same matrix, different subsystem layout."""
        return DensityOperator(space=HilbertSpec(dims=dims), mat=self.mat)

    def rotate(self, u: np.ndarray) -> 'DensityOperator':
        """U ρ U†."""
        u = check_unitary(u, what="rotation")
        if u.shape[0] != self.d:
            raise DimensionError(f"Rotation of dimension {u.shape[0]} on a {self.d}-dim state")
        return DensityOperator(space=self.space, mat=u @ self.mat @ u.conj().T)

    def __repr__(self) -> str:
        return f"DensityOperator(dims={list(self.dims)}, rank={self.rank})"


class Spectrum(BaseModel):
    """Descending eigenvalues and the matching eigenvector columns of a density operator."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='before')
    @classmethod
    def validate_spectrum(cls, values):
        """Eigenvalues form a distribution; eigenvectors form a unitary."""
        if not isinstance(values, dict):
            return values
        lam = np.asarray(values.get('eigenvalues'), dtype=float).reshape(-1)
        vecs = values.get('eigenvectors')
        vecs = np.eye(lam.size, dtype=complex) if vecs is None else np.asarray(vecs, dtype=complex)

        if lam.size < 2:
            raise InvalidState("A spectrum needs at least two eigenvalues")
        if not np.all(np.isfinite(lam)):
            raise InvalidState("Spectrum has non-finite entries")
        if lam.min() < -SPECTRUM_TOL:
            raise InvalidState(f"Spectrum has negative entry {lam.min():.3e}")
        if abs(lam.sum() - 1.0) > SPECTRUM_TOL:
            raise InvalidState(f"Spectrum sums to {lam.sum():.12g}, expected 1")
        if vecs.shape != (lam.size, lam.size):
            raise DimensionError(
                f"Eigenvector matrix shape {vecs.shape} does not match {lam.size} eigenvalues"
            )
        check_unitary(vecs, SPECTRUM_TOL, what="eigenvector matrix")

        lam = np.clip(lam, 0.0, None)
        order = np.argsort(-lam, kind="stable")
        return {'eigenvalues': _freeze(lam[order]), 'eigenvectors': _freeze(vecs[:, order])}

    @classmethod
    def from_probabilities(cls, probabilities: Iterable[float]) -> 'Spectrum':
        """Spectrum of diag(p) in the computational basis."""
        return cls(eigenvalues=np.asarray(list(probabilities), dtype=float), eigenvectors=None)

    @property
    def d(self) -> int:
        return int(self.eigenvalues.size)

    def to_matrix(self) -> np.ndarray:
        """Reconstruct V Λ V†."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def to_density(self, dims: Optional[Sequence[int]] = None) -> DensityOperator:
        return DensityOperator.from_matrix(self.to_matrix(), dims)


def eig_hermitian(rho: DensityOperator) -> Spectrum:
    """Descending eigendecomposition of a density operator."""
    try:
        evals, evecs = np.linalg.eigh(rho.mat)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"Hermitian eigensolver did not converge: {e}") from e
    evals = np.clip(evals[::-1], 0.0, None)
    evecs = evecs[:, ::-1]
    evals = evals / evals.sum()
    return Spectrum(eigenvalues=evals, eigenvectors=evecs)


def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """Kronecker product with concatenated subsystem dims."""
    return DensityOperator(
        space=HilbertSpec(dims=a.dims + b.dims),
        mat=np.kron(a.mat, b.mat),
    )


def _as_label(keep: Union[PartitionLabel, Iterable[int], int]) -> PartitionLabel:
    if isinstance(keep, PartitionLabel):
        return keep
    return PartitionLabel(indices=keep)


def partial_trace(rho: DensityOperator, keep: Union[PartitionLabel, Iterable[int], int]) -> DensityOperator:
    """Trace out every subsystem not in `keep`; kept factors stay in original order."""
    label = _as_label(keep)
    label.check_within(rho.n_parts)

    dims = list(rho.dims)
    n = len(dims)
    kept = list(label.indices)
    traced = [i for i in range(n) if i not in label.indices]
    if not traced:
        return rho

    dk = int(np.prod([dims[i] for i in kept]))
    dt = int(np.prod([dims[i] for i in traced]))
    perm = kept + traced + [n + i for i in kept] + [n + i for i in traced]
    t = rho.mat.reshape(dims + dims).transpose(perm).reshape(dk, dt, dk, dt)
    reduced = np.einsum('ijkj->ik', t)
    return DensityOperator(space=rho.space.sub(kept), mat=reduced)


__all__ = [
    "DensityOperator", "Spectrum", "eig_hermitian", "tensor", "partial_trace",
    "unitarity_error", "check_unitary",
    "HERMITIAN_TOL", "TRACE_TOL", "EIGEN_CLAMP", "UNITARY_TOL",
]
