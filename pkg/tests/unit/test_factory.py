"""
Unit tests for the state factory.
"""

import numpy as np
import pytest

from qinfo.core.errors import DimensionError, DomainError, InvalidState
from qinfo.core.types import StateName
from qinfo.state.factory import (
    bell,
    bloch,
    diag_state,
    ghz,
    make_named_state,
    maximally_mixed,
    pure_qubit,
    random_bloch_vector,
    random_density,
    random_unit_vector,
    random_unitary,
    w,
)


class TestNamedStates:
    """Test the textbook states."""

    def test_bell(self):
        rho = bell()
        assert rho.dims == (2, 2)
        assert np.isclose(rho.mat[0, 3].real, 0.5)
        assert rho.rank == 1

    def test_ghz(self):
        rho = ghz(3)
        assert rho.dims == (2, 2, 2)
        assert np.isclose(rho.mat[0, 7].real, 0.5)

    def test_w_amplitudes(self):
        rho = w(3)
        for k in (1, 2, 4):
            assert np.isclose(rho.mat[k, k].real, 1 / 3)
        assert np.isclose(rho.mat[0, 0].real, 0.0)

    def test_ghz_needs_two_qubits(self):
        with pytest.raises(InvalidState):
            ghz(1)

    def test_pure_qubit(self):
        rho = pure_qubit(np.pi / 2, 0.0)
        assert np.allclose(rho.mat, np.full((2, 2), 0.5))

    def test_bloch(self):
        rho = bloch([0, 0, 1])
        assert np.allclose(rho.mat, np.diag([1, 0]))

    def test_bloch_too_long(self):
        with pytest.raises(InvalidState):
            bloch([1, 1, 0])

    def test_bloch_wrong_size(self):
        with pytest.raises(InvalidState):
            bloch([0, 1])

    def test_maximally_mixed(self):
        assert np.allclose(maximally_mixed(3).mat, np.eye(3) / 3)
        with pytest.raises(InvalidState):
            maximally_mixed(1)

    def test_diag_state(self):
        assert np.allclose(np.diag(diag_state([0.1, 0.9]).mat).real, [0.1, 0.9])
        with pytest.raises(InvalidState):
            diag_state([0.5, 0.6])


class TestMakeNamedState:
    """Test make_named_state dispatch."""

    @pytest.mark.parametrize("name", ["bell", "ghz3", "w3", StateName.W3])
    def test_without_params(self, name):
        assert make_named_state(name).n_parts in (2, 3)

    def test_with_params(self):
        assert make_named_state("ghz", [4]).n_parts == 4
        assert make_named_state("mixed", [2]).d == 2
        assert make_named_state("pure", [0.0, 0.0]).rank == 1
        assert make_named_state("diag", [0.3, 0.7]).d == 2

    def test_unknown_name(self):
        with pytest.raises(InvalidState):
            make_named_state("cat")

    def test_wrong_parameter_count(self):
        with pytest.raises(InvalidState):
            make_named_state("bloch", [0.0, 0.0])

    def test_fractional_qubit_count(self):
        with pytest.raises(InvalidState):
            make_named_state("w", [2.5])


class TestRandomStates:
    """Test the seeded random generators."""

    def test_random_unitary_is_unitary(self, rng):
        u = random_unitary(5, rng)
        assert np.allclose(u.conj().T @ u, np.eye(5), atol=1e-12)

    def test_random_density_is_reproducible(self):
        a = random_density(4, seed=7)
        b = random_density(4, seed=7)
        assert np.array_equal(a.mat, b.mat)

    def test_random_density_rank(self):
        assert random_density(4, rank=2, seed=1).rank == 2

    def test_random_density_dims(self):
        assert random_density(6, seed=1, dims=(2, 3)).dims == (2, 3)
        with pytest.raises(DimensionError):
            random_density(6, seed=1, dims=(2, 2))

    def test_random_density_bad_rank(self):
        with pytest.raises(DomainError):
            random_density(3, rank=4)

    def test_random_vectors(self, rng):
        assert np.isclose(np.linalg.norm(random_unit_vector(rng)), 1.0)
        assert np.linalg.norm(random_bloch_vector(rng, 0.5)) <= 0.5 + 1e-12
