"""
Unit tests for density operators, spectra and partial traces.
"""

import numpy as np
import pytest

from qinfo.core.errors import DimensionError, InvalidBasis, InvalidPartition, InvalidState
from qinfo.core.types import PartitionLabel
from qinfo.state.density import (
    DensityOperator,
    Spectrum,
    check_unitary,
    eig_hermitian,
    partial_trace,
    tensor,
)
from qinfo.state.factory import bell, ghz, maximally_mixed, random_density, random_unitary, w


class TestDensityOperatorValidation:
    """Construction-time invariant checks."""

    def test_valid_matrix(self):
        rho = DensityOperator.from_matrix(np.diag([0.25, 0.75]))
        assert rho.dims == (2,)
        assert rho.d == 2
        assert np.allclose(rho.eigenvalues, [0.75, 0.25])

    def test_non_square(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(np.ones((2, 3)) / 2)

    def test_dims_mismatch(self):
        with pytest.raises(DimensionError):
            DensityOperator.from_matrix(np.eye(4) / 4, (2, 3))

    def test_not_hermitian(self):
        mat = np.array([[0.5, 0.1], [0.0, 0.5]])
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(mat)

    def test_wrong_trace(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(np.eye(2) * 0.6)

    def test_negative_eigenvalue(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(np.diag([1.1, -0.1]))

    def test_non_finite(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(np.array([[np.nan, 0], [0, 1]]))

    def test_tiny_negative_eigenvalue_is_clamped(self):
        rho = DensityOperator.from_matrix(np.diag([1.0 + 5e-11, -5e-11]))
        assert rho.eigenvalues.min() >= 0.0
        assert abs(np.trace(rho.mat).real - 1.0) < 1e-12

    def test_matrix_is_read_only(self):
        rho = maximally_mixed(2)
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1.0

    def test_from_ket_normalises(self):
        rho = DensityOperator.from_ket([1.0, 1.0])
        assert np.allclose(rho.mat, np.full((2, 2), 0.5))
        assert rho.rank == 1

    def test_zero_ket(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_ket([0.0, 0.0])

    def test_with_dims(self):
        rho = maximally_mixed(4).with_dims((2, 2))
        assert rho.n_parts == 2

    def test_rotate(self, rng):
        rho = random_density(3, seed=rng)
        u = random_unitary(3, rng)
        rotated = rho.rotate(u)
        assert np.allclose(rotated.mat, u @ rho.mat @ u.conj().T)
        assert np.allclose(rotated.eigenvalues, rho.eigenvalues)

    def test_rotate_rejects_non_unitary(self):
        with pytest.raises(InvalidBasis):
            maximally_mixed(2).rotate(np.ones((2, 2)))

    def test_repr(self):
        assert repr(bell()) == "DensityOperator(dims=[2, 2], rank=1)"


class TestSpectrum:
    """Test Spectrum model and the eigendecomposition."""

    def test_sorted_descending(self):
        spec = Spectrum.from_probabilities([0.2, 0.5, 0.3])
        assert np.allclose(spec.eigenvalues, [0.5, 0.3, 0.2])
        assert np.allclose(np.abs(spec.eigenvectors[:, 0]), [0, 1, 0])

    def test_not_normalised(self):
        with pytest.raises(InvalidState):
            Spectrum.from_probabilities([0.5, 0.6])

    def test_negative_entry(self):
        with pytest.raises(InvalidState):
            Spectrum.from_probabilities([1.2, -0.2])

    def test_too_short(self):
        with pytest.raises(InvalidState):
            Spectrum.from_probabilities([1.0])

    def test_non_unitary_vectors(self):
        with pytest.raises(InvalidBasis):
            Spectrum(eigenvalues=[0.5, 0.5], eigenvectors=np.ones((2, 2)))

    def test_eig_reconstruction(self, rng):
        for d in (2, 5, 9, 16):
            rho = random_density(d, seed=rng)
            spec = eig_hermitian(rho)
            assert np.max(np.abs(spec.to_matrix() - rho.mat)) < 1e-9
            assert np.all(np.diff(spec.eigenvalues) <= 0)

    def test_to_density(self):
        rho = Spectrum.from_probabilities([0.9, 0.1]).to_density()
        assert np.allclose(np.diag(rho.mat).real, [0.9, 0.1])

    def test_check_unitary(self):
        assert check_unitary(np.eye(3)).dtype == complex
        with pytest.raises(InvalidBasis):
            check_unitary(np.eye(3) * 2)


class TestPartialTrace:
    """Test partial_trace and tensor."""

    def test_trace_preserved(self, rng):
        rho = random_density(12, seed=rng, dims=(2, 3, 2))
        for keep in ([0], [1], [2], [0, 2], [1, 2]):
            reduced = partial_trace(rho, keep)
            assert abs(np.trace(reduced.mat).real - 1.0) < 1e-12
            assert reduced.eigenvalues.min() >= 0.0

    def test_keep_all_returns_same(self, w_state):
        assert partial_trace(w_state, [0, 1, 2]) is w_state

    def test_composition(self, rng):
        rho = random_density(12, seed=rng, dims=(2, 3, 2))
        two_step = partial_trace(partial_trace(rho, [1, 2]), 0)
        assert np.allclose(two_step.mat, partial_trace(rho, 1).mat, atol=1e-12)

    def test_kept_order_and_dims(self, rng):
        rho = random_density(12, seed=rng, dims=(2, 3, 2))
        assert partial_trace(rho, [2, 1]).dims == (3, 2)

    def test_tensor_round_trip(self, rng):
        a = random_density(2, seed=rng)
        b = random_density(3, seed=rng)
        ab = tensor(a, b)
        assert ab.dims == (2, 3)
        assert np.allclose(partial_trace(ab, 0).mat, a.mat, atol=1e-12)
        assert np.allclose(partial_trace(ab, 1).mat, b.mat, atol=1e-12)

    def test_ghz_marginals(self, ghz_state):
        assert np.allclose(partial_trace(ghz_state, 0).mat, np.eye(2) / 2)
        assert np.allclose(partial_trace(ghz_state, [0, 1]).mat, np.diag([0.5, 0, 0, 0.5]))

    def test_w_single_marginal(self, w_state):
        assert np.allclose(partial_trace(w_state, PartitionLabel.of(1)).mat, np.diag([2 / 3, 1 / 3]))

    def test_out_of_range(self, bell_state):
        with pytest.raises(InvalidPartition):
            partial_trace(bell_state, [2])

    def test_bell_marginal(self, bell_state):
        assert np.allclose(partial_trace(bell_state, 1).mat, np.eye(2) / 2)

    def test_ghz4_dims(self):
        assert partial_trace(ghz(4), [1, 3]).dims == (2, 2)

    def test_w_three_site(self):
        assert partial_trace(w(4), [0, 1, 2]).d == 8
