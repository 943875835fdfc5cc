"""
Equal-diagonal measurement bases.

Given the eigenbasis |r_j> of a state, the discrete Fourier transform
|phi_k> = d^{-1/2} sum_j exp(2 pi i jk/d) |r_j> is a basis in which every
diagonal element of the state equals 1/d, so measuring in it maximizes the
outcome entropy at log2 d.
"""

import numpy as np

from ..state.density import Spectrum


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary DFT matrix F_jk = exp(2 pi i jk/d) / sqrt(d)."""
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def equalizing_basis(spec: Spectrum) -> np.ndarray:
    """Columns |phi_k> built from the eigenvector columns of `spec`."""
    return spec.eigenvectors @ fourier_matrix(spec.d)


__all__ = ["fourier_matrix", "equalizing_basis"]
