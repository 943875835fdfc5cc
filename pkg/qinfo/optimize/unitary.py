"""
Real parameterization of (products of) unitary groups.

Each factor U(d) is reached as exp(iH) with H = sum_k theta_k G_k over an
orthonormal Hermitian basis G_k of d*d generators, so the parameter space is
unconstrained and R^{d*d} maps onto U(d). The first d generators are the
diagonal units E_kk; shifting all of them by the same amount only changes a
global phase.
"""

from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.errors import DimensionError


@lru_cache(maxsize=None)
def hermitian_basis(d: int) -> np.ndarray:
    """Array of shape (d*d, d, d): E_kk, then symmetric and antisymmetric off-diagonal pairs."""
    basis = []
    for k in range(d):
        g = np.zeros((d, d), dtype=complex)
        g[k, k] = 1.0
        basis.append(g)
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0 / np.sqrt(2)
            basis.append(sym)
            anti = np.zeros((d, d), dtype=complex)
            anti[k, j] = 1j / np.sqrt(2)
            anti[j, k] = -1j / np.sqrt(2)
            basis.append(anti)
    out = np.array(basis)
    out.setflags(write=False)
    return out


def gauge_direction(factor_dims: Sequence[int]) -> np.ndarray:
    """Parameter direction that multiplies every factor by a global phase."""
    blocks = []
    for d in factor_dims:
        block = np.zeros(d * d)
        block[:d] = 1.0
        blocks.append(block)
    return np.concatenate(blocks)


def exp_i_hermitian(h: np.ndarray) -> np.ndarray:
    """exp(iH) for a Hermitian matrix or a batch of them, via eigh."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def factor_unitaries(thetas: np.ndarray, factor_dims: Sequence[int]) -> List[np.ndarray]:
    """Split a (batch, n_params) array into per-factor unitary batches."""
    thetas = np.atleast_2d(thetas)
    out = []
    offset = 0
    for d in factor_dims:
        block = thetas[:, offset:offset + d * d]
        offset += d * d
        h = np.einsum('bk,kij->bij', block, hermitian_basis(d))
        out.append(exp_i_hermitian(h))
    return out


def batched_kron(factors: List[np.ndarray]) -> np.ndarray:
    """Kronecker product of per-factor unitary batches, factor order preserved."""
    result = factors[0]
    for f in factors[1:]:
        b, m, _ = result.shape
        n = f.shape[1]
        result = np.einsum('bij,bkl->bikjl', result, f).reshape(b, m * n, m * n)
    return result


def permute_subsystems(mat: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of an operator so that new factor k is old factor order[k]."""
    dims = list(dims)
    n = len(dims)
    order = list(order)
    if order == list(range(n)):
        return mat
    d = int(np.prod(dims))
    axes = order + [n + i for i in order]
    return mat.reshape(dims + dims).transpose(axes).reshape(d, d)


class UnitaryPoint(BaseModel):
    """Parameters of a product unitary U_1 x ... x U_k, one block of d_i^2 reals per factor.

    `parts` lists the subsystem positions each factor acts on and `space_dims`
    the subsystem dimensions of the whole space, so the point can be realised
    on the original subsystem ordering.
    """
    parts: Tuple[Tuple[int, ...], ...]
    space_dims: Tuple[int, ...]
    theta: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='after')
    def check_parameter_count(self):
        """Parameter count must equal the sum of squared factor dimensions."""
        expected = sum(d * d for d in self.factor_dims)
        if self.theta.shape != (expected,):
            raise DimensionError(
                f"UnitaryPoint expects {expected} parameters, got shape {self.theta.shape}"
            )
        return self

    @property
    def factor_dims(self) -> Tuple[int, ...]:
        return tuple(int(np.prod([self.space_dims[i] for i in part])) for part in self.parts)

    @property
    def order(self) -> List[int]:
        return [i for part in self.parts for i in part]

    def factors(self) -> List[np.ndarray]:
        """Per-factor unitaries, each on its part's subsystems in increasing order."""
        return [u[0] for u in factor_unitaries(self.theta, self.factor_dims)]

    def matrix(self) -> np.ndarray:
        """The full product unitary on the original subsystem ordering."""
        u = batched_kron([f[None] for f in self.factors()])[0]
        permuted_dims = [self.space_dims[i] for i in self.order]
        return permute_subsystems(u, permuted_dims, list(np.argsort(self.order)))


__all__ = [
    "hermitian_basis", "gauge_direction", "exp_i_hermitian", "factor_unitaries",
    "batched_kron", "permute_subsystems", "UnitaryPoint",
]
