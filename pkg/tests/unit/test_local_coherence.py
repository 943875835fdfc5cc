"""
Unit tests for the multi-start search and the locally achievable coherent entropy.
"""

import numpy as np
import pytest

from qinfo.core.config import OptimizerConfig
from qinfo.core.errors import ConvergenceWarning, InvalidPartition
from qinfo.core.types import Direction, StartKind
from qinfo.entropy.extremal import coherent_entropy_extremal
from qinfo.entropy.measures import binary_entropy, coherent_entropy, diagonal_entropy, von_neumann
from qinfo.optimize.local import optimize_diag_entropy, sc_local, search_diag_entropy
from qinfo.state.density import DensityOperator
from qinfo.state.factory import diag_state, random_density, random_unitary


@pytest.fixture
def product_state():
    return DensityOperator.from_ket([1.0, 0.0, 0.0, 0.0]).with_dims((2, 2))


class TestExtremalCoherentEntropy:
    """The full-group search reproduces the closed form."""

    def test_diagonal_qubit(self, fast_optimizer):
        result = coherent_entropy_extremal(diag_state([0.7, 0.3]), fast_optimizer)
        assert result.max_diag == pytest.approx(1.0, abs=1e-6)
        assert result.min_diag == pytest.approx(binary_entropy(0.7), abs=1e-6)
        assert result.sc == pytest.approx(1.0 - binary_entropy(0.7), abs=1e-6)
        assert result.converged

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [2, 3, 4, 8])
    def test_random_states_match_closed_form(self, d):
        rho = random_density(d, seed=100 + d)
        result = coherent_entropy_extremal(rho, OptimizerConfig(restarts=1, seed=d))
        assert result.max_diag == pytest.approx(np.log2(d), abs=2e-6)
        assert result.min_diag == pytest.approx(von_neumann(rho), abs=2e-6)
        assert result.sc == pytest.approx(coherent_entropy(rho), abs=5e-6)

    def test_as_tuple(self, fast_optimizer):
        hi, lo, sc = coherent_entropy_extremal(diag_state([0.7, 0.3]), fast_optimizer).as_tuple()
        assert sc == pytest.approx(hi - lo)


class TestSearch:
    """Test restarts, determinism and the returned unitary."""

    def test_trace_count(self, bell_state, fast_optimizer):
        outcome, _ = search_diag_entropy(bell_state, [[0], [1]], Direction.MAX, fast_optimizer)
        assert len(outcome.traces) == fast_optimizer.restarts + 1
        assert outcome.traces[0].start == StartKind.IDENTITY
        assert all(t.start == StartKind.RANDOM for t in outcome.traces[1:])

    def test_deterministic(self, rng, fast_optimizer):
        rho = random_density(4, seed=rng, dims=(2, 2))
        a, _ = optimize_diag_entropy(rho, [[0], [1]], "max", fast_optimizer)
        b, _ = optimize_diag_entropy(rho, [[0], [1]], "max", fast_optimizer)
        assert a == pytest.approx(b, abs=1e-12)

    def test_thread_count_does_not_change_result(self, rng, fast_optimizer):
        rho = random_density(4, seed=rng, dims=(2, 2))
        threaded = fast_optimizer.model_copy(update={"threads": 2})
        a, _ = optimize_diag_entropy(rho, [[0], [1]], Direction.MIN, fast_optimizer)
        b, _ = optimize_diag_entropy(rho, [[0], [1]], Direction.MIN, threaded)
        assert a == pytest.approx(b, abs=1e-12)

    def test_point_reproduces_value(self, rng, fast_optimizer):
        rho = random_density(4, seed=rng, dims=(2, 2))
        value, point = optimize_diag_entropy(rho, [[0], [1]], Direction.MIN, fast_optimizer)
        assert diagonal_entropy(rho, point.matrix()) == pytest.approx(value, abs=1e-9)

    def test_min_never_below_von_neumann(self, rng, fast_optimizer):
        rho = random_density(4, seed=rng, dims=(2, 2))
        value, _ = optimize_diag_entropy(rho, None, Direction.MIN, fast_optimizer)
        assert value >= von_neumann(rho) - 1e-9

    def test_convergence_warning(self, bell_state):
        cfg = OptimizerConfig(restarts=1, max_iters=1)
        with pytest.warns(ConvergenceWarning):
            outcome, _ = search_diag_entropy(bell_state, [[0], [1]], Direction.MAX, cfg)
        assert not outcome.converged
        assert np.isfinite(outcome.value)

    def test_invalid_partition(self, bell_state, fast_optimizer):
        with pytest.raises(InvalidPartition):
            optimize_diag_entropy(bell_state, [[0]], Direction.MAX, fast_optimizer)


class TestScLocal:
    """Test S_c^loc, the coherence gap and local correlations."""

    def test_bell(self, bell_state, fast_optimizer):
        result = sc_local(bell_state, [[0], [1]], fast_optimizer)
        assert result.sc == pytest.approx(2.0)
        assert result.min_diag == pytest.approx(1.0, abs=1e-3)
        assert result.max_diag == pytest.approx(2.0, abs=1e-3)
        assert result.gap == pytest.approx(1.0, abs=1e-3)
        assert result.mutual_information == pytest.approx(2.0)
        assert result.local == pytest.approx(1.0, abs=1e-3)
        assert result.parts == ["A", "B"]

    def test_product_state_has_no_gap(self, product_state, fast_optimizer):
        result = sc_local(product_state, [[0], [1]], fast_optimizer)
        assert result.sc_loc == pytest.approx(2.0, abs=1e-3)
        assert result.gap == pytest.approx(0.0, abs=1e-3)
        assert result.local == pytest.approx(0.0, abs=1e-3)

    def test_bounds(self, rng, fast_optimizer):
        rho = random_density(4, seed=rng, dims=(2, 2))
        result = sc_local(rho, [[0], [1]], fast_optimizer)
        assert 0.0 <= result.sc_loc <= result.sc + 1e-12
        assert result.max_diag <= 2.0
        assert result.min_diag >= von_neumann(rho)

    def test_traces_kept(self, bell_state, fast_optimizer):
        result = sc_local(bell_state, [[0], [1]], fast_optimizer)
        assert len(result.traces_max) == fast_optimizer.restarts + 1
        assert len(result.restart_values_min) == fast_optimizer.restarts + 1
        assert result.converged

    def test_three_parts_have_no_local_term(self, ghz_state, fast_optimizer):
        result = sc_local(ghz_state, [[0], [1], [2]], fast_optimizer)
        assert result.mutual_information is None
        assert result.local is None

    def test_single_part_matches_coherent_entropy(self, rng):
        rho = random_density(4, seed=rng)
        result = sc_local(rho, None, OptimizerConfig(restarts=2, seed=5))
        assert result.sc_loc == pytest.approx(coherent_entropy(rho), abs=5e-6)
        assert result.gap == pytest.approx(0.0, abs=5e-6)

    def test_gap_invariant_under_local_rotation(self, rng):
        rho = random_density(4, seed=rng, dims=(2, 2))
        local = np.kron(random_unitary(2, rng), random_unitary(2, rng))
        cfg = OptimizerConfig(restarts=6, seed=3)
        before = sc_local(rho, [[0], [1]], cfg)
        after = sc_local(rho.rotate(local), [[0], [1]], cfg)
        assert after.gap == pytest.approx(before.gap, abs=1e-3)
        assert after.local == pytest.approx(before.local, abs=1e-3)
