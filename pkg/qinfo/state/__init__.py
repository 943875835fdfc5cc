"""Density operators, partial traces and the state factory."""

from .density import (
    DensityOperator,
    Spectrum,
    check_unitary,
    eig_hermitian,
    partial_trace,
    tensor,
    unitarity_error,
)
from .factory import (
    bell,
    bloch,
    diag_state,
    ghz,
    make_named_state,
    maximally_mixed,
    pure_qubit,
    random_density,
    random_unitary,
    w,
)
