"""Entropy functionals, equal-diagonal bases and the extremal coherent entropy."""

from .basis import equalizing_basis, fourier_matrix
from .extremal import ExtremalEntropy, coherent_entropy_extremal
from .measures import (
    binary_entropy,
    coherent_entropy,
    diagonal_distribution,
    diagonal_entropy,
    relative_entropy,
    shannon_entropy,
    von_neumann,
)
