"""
Built-in invariant checks.

Fast checks use reduced sample counts and finish well inside a minute; the
full suite repeats the sweeps at acceptance sizes and adds the numerical
optimizer and Monte Carlo checks. Fixture values are absolute numbers, so a
change of logarithm base or of a named state shows up here even though the
conservation identities would still balance.
"""

import logging
from itertools import combinations
from typing import List

import numpy as np

from ..core.config import OptimizerConfig
from ..core.types import PartitionLabel, SuiteLevel
from ..entanglement.concurrence import concurrence
from ..entropy.basis import equalizing_basis
from ..entropy.extremal import coherent_entropy_extremal
from ..entropy.measures import (
    binary_entropy,
    coherent_entropy,
    diagonal_distribution,
    diagonal_entropy,
    relative_entropy,
    von_neumann,
)
from ..multipartite.ledger import (
    bipartite_ledger,
    chain_ledger,
    max_residual,
    mutual_information,
    tripartite_ledgers,
)
from ..optimize.local import sc_local
from ..state.density import DensityOperator, Spectrum, eig_hermitian, partial_trace, tensor
from ..state.factory import (
    bell,
    ghz,
    maximally_mixed,
    random_bloch_vector,
    random_density,
    random_unit_vector,
    random_unitary,
    w,
)
from ..timechannel.protocol import (
    analyze_protocol,
    mutual_information_12,
    optimal_protocol,
    qubit_protocol,
    qubit_tcorr_closed_form,
    random_protocol,
)
from ..timechannel.sampling import sample_protocol
from .registry import invariant_check

logger = logging.getLogger(__name__)

FIXTURE_TOL = 1e-6
H2_THIRD = 0.9182958340544896
EXTREMAL_DIMS = (2, 3, 4, 8)


def _random_spectrum(d: int, rng: np.random.Generator) -> Spectrum:
    p = rng.dirichlet(np.ones(d))
    return Spectrum(eigenvalues=p, eigenvectors=random_unitary(d, rng))


def _random_product_dims(rng: np.random.Generator, n_parts: int, max_dim: int) -> List[int]:
    return [int(rng.integers(2, max_dim + 1)) for _ in range(n_parts)]


def _random_state(rng: np.random.Generator, dims: List[int]) -> DensityOperator:
    d = int(np.prod(dims))
    rank = int(rng.integers(1, d + 1))
    return random_density(d, rank=rank, seed=rng, dims=dims)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@invariant_check
def named_state_fixtures():
    """Entropies of Bell, GHZ and W marginals against known values."""
    expected = {
        "S(W_A)": (von_neumann(partial_trace(w(3), 0)), H2_THIRD),
        "S_c(W_A)": (coherent_entropy(partial_trace(w(3), 0)), 1.0 - H2_THIRD),
        "S_c(W_AB)": (coherent_entropy(partial_trace(w(3), [0, 1])), 2.0 - H2_THIRD),
        "I(W_A:B)": (mutual_information(partial_trace(w(3), [0, 1]), 0, 1), H2_THIRD),
        "S_c(Bell)": (coherent_entropy(bell()), 2.0),
        "I(Bell)": (mutual_information(bell(), 0, 1), 2.0),
        "I(GHZ_A:B)": (mutual_information(partial_trace(ghz(3), [0, 1]), 0, 1), 1.0),
        "S_c(GHZ_ABC)": (coherent_entropy(ghz(3)), 3.0),
        "H2(1/3)": (binary_entropy(1.0 / 3.0), H2_THIRD),
        "D(I/2||diag(.8,.2))": (
            relative_entropy(maximally_mixed(2), DensityOperator.from_matrix(np.diag([0.8, 0.2]))),
            -1.0 - 0.5 * np.log2(0.8 * 0.2),
        ),
    }
    bad = {k: v for k, v in expected.items() if abs(v[0] - v[1]) > FIXTURE_TOL}
    message = "all fixtures match" if not bad else "; ".join(
        f"{k}={v[0]:.9f} (expected {v[1]:.9f})" for k, v in bad.items()
    )
    return not bad, message, {k: v[0] for k, v in expected.items()}


@invariant_check
def pair_entanglement_fixtures():
    """Concurrence-based entanglement of formation of Bell, GHZ and W pairs."""
    w_pair = concurrence(partial_trace(w(3), [0, 1]))
    ghz_pair = concurrence(partial_trace(ghz(3), [0, 1]))
    bell_pair = concurrence(bell())
    checks = [
        abs(w_pair.concurrence - 2.0 / 3.0) < FIXTURE_TOL,
        abs(w_pair.e_f - 0.55005) < 1e-4,
        ghz_pair.e_f < FIXTURE_TOL,
        abs(bell_pair.e_f - 1.0) < FIXTURE_TOL,
    ]
    return all(checks), (
        f"E_f(W pair)={w_pair.e_f:.7f}, E_f(GHZ pair)={ghz_pair.e_f:.7f}, E_f(Bell)={bell_pair.e_f:.7f}"
    )


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

def _partial_trace_sweep(count: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        dims = _random_product_dims(rng, 3, 3)
        rho = _random_state(rng, dims)
        # Tracing in two steps equals tracing at once
        two_step = partial_trace(partial_trace(rho, [0, 1]), 0)
        worst = max(worst, float(np.max(np.abs(two_step.mat - partial_trace(rho, 0).mat))))
        # Product states factor back
        a = _random_state(rng, dims[:1])
        b = _random_state(rng, dims[1:2])
        ab = tensor(a, b)
        worst = max(worst, float(np.max(np.abs(partial_trace(ab, 0).mat - a.mat))))
        worst = max(worst, float(np.max(np.abs(partial_trace(ab, 1).mat - b.mat))))
    return worst < 1e-12, f"max deviation {worst:.3e} over {count} states"


def _eig_sweep(count: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        d = int(rng.integers(2, 17))
        rho = _random_state(rng, [d])
        spec = eig_hermitian(rho)
        worst = max(worst, float(np.max(np.abs(spec.to_matrix() - rho.mat))))
    return worst < 1e-9, f"max reconstruction error {worst:.3e} over {count} states"


@invariant_check
def partial_trace_composition():
    """Partial traces compose and invert tensor products."""
    return _partial_trace_sweep(50, seed=11)


@invariant_check
def eigendecomposition_reconstruction():
    """U diag(lambda) U† reproduces rho."""
    return _eig_sweep(200, seed=12)


@invariant_check(level=SuiteLevel.ALL)
def eigendecomposition_reconstruction_full():
    """U diag(lambda) U† reproduces rho on the full sample."""
    return _eig_sweep(1000, seed=112)


# ---------------------------------------------------------------------------
# Entropies
# ---------------------------------------------------------------------------

@invariant_check
def diagonal_entropy_bound():
    """Diagonal entropy in any basis is at least the von Neumann entropy."""
    rng = np.random.default_rng(13)
    worst = np.inf
    for _ in range(200):
        d = int(rng.integers(2, 9))
        rho = _random_state(rng, [d])
        margin = diagonal_entropy(rho, random_unitary(d, rng)) - von_neumann(rho)
        worst = min(worst, margin)
    return worst >= -1e-12, f"smallest margin {worst:.3e}"


@invariant_check
def equal_diagonal_basis():
    """The equalizing basis gives every state a uniform diagonal."""
    rng = np.random.default_rng(14)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 13))
        rho = _random_state(rng, [d])
        p = diagonal_distribution(rho, equalizing_basis(eig_hermitian(rho)))
        worst = max(worst, float(np.max(np.abs(p - 1.0 / d))))
    return worst < 1e-12, f"max deviation from 1/d {worst:.3e}"


@invariant_check
def relative_entropy_to_dephased():
    """S(rho || dephased rho) equals diagonal entropy minus entropy."""
    rng = np.random.default_rng(15)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 7))
        rho = _random_state(rng, [d])
        dephased = DensityOperator.from_matrix(np.diag(np.real(np.diag(rho.mat))))
        gap = relative_entropy(rho, dephased) - (diagonal_entropy(rho) - von_neumann(rho))
        worst = max(worst, abs(gap))
    return worst < 1e-9, f"max deviation {worst:.3e}"


@invariant_check
def coherent_entropy_convexity():
    """S_c of a mixture never exceeds the mixture of S_c."""
    rng = np.random.default_rng(16)
    worst = np.inf
    for _ in range(200):
        d = int(rng.integers(2, 7))
        a, b = _random_state(rng, [d]), _random_state(rng, [d])
        p = float(rng.uniform())
        mix = DensityOperator.from_matrix(p * a.mat + (1 - p) * b.mat)
        margin = p * coherent_entropy(a) + (1 - p) * coherent_entropy(b) - coherent_entropy(mix)
        worst = min(worst, margin)
    return worst >= -1e-9, f"smallest margin {worst:.3e}"


@invariant_check
def aggregation_monotonicity():
    """I(A:B) >= 0, so S_c(AB) >= S_c(A) + S_c(B)."""
    rng = np.random.default_rng(17)
    worst = np.inf
    for _ in range(200):
        rho = _random_state(rng, _random_product_dims(rng, 2, 4))
        margin = (
            coherent_entropy(rho)
            - coherent_entropy(partial_trace(rho, 0))
            - coherent_entropy(partial_trace(rho, 1))
        )
        worst = min(worst, margin, mutual_information(rho, 0, 1))
    return worst >= -1e-9, f"smallest margin {worst:.3e}"


# ---------------------------------------------------------------------------
# Ledgers
# ---------------------------------------------------------------------------

def _bipartite_sweep(count: int, seed: int):
    rng = np.random.default_rng(seed)
    residuals = [
        abs(bipartite_ledger(_random_state(rng, _random_product_dims(rng, 2, 4)), 0, 1).residual)
        for _ in range(count)
    ]
    worst = max(residuals)
    return worst < 1e-9, f"max residual {worst:.3e} over {count} states"


def _tripartite_sweep(count: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        rho = _random_state(rng, _random_product_dims(rng, 3, 3))
        worst = max(worst, max_residual(tripartite_ledgers(rho)))
    return worst < 1e-9, f"max residual {worst:.3e} over {count} states and 6 orderings"


@invariant_check
def bipartite_ledger_balance():
    """S_c(AB) = S_c(A) + S_c(B) + I(A:B) on random states and the W split A|BC."""
    passed, message = _bipartite_sweep(100, seed=18)
    ledger = bipartite_ledger(w(3), [0], [1, 2])
    terms = {
        "S_c(A)": 1.0 - H2_THIRD,
        "S_c(BC)": 2.0 - H2_THIRD,
        "I(A:BC)": 2.0 * H2_THIRD,
    }
    off = [k for k, v in terms.items() if abs(ledger.term(k) - v) > FIXTURE_TOL]
    if off:
        return False, f"W ledger terms off: {', '.join(off)}"
    return passed and ledger.balanced, message


@invariant_check(level=SuiteLevel.ALL)
def bipartite_ledger_balance_full():
    """Bipartite ledger on the full sample."""
    return _bipartite_sweep(500, seed=118)


@invariant_check
def tripartite_ledger_balance():
    """Chain ledger over three parts in every ordering, plus GHZ."""
    passed, message = _tripartite_sweep(50, seed=19)
    ghz_ledger = chain_ledger(ghz(3))
    ghz_ok = abs(ghz_ledger.term("I(AB:C)") - 2.0) < FIXTURE_TOL and ghz_ledger.balanced
    return passed and ghz_ok, message


@invariant_check(level=SuiteLevel.ALL)
def tripartite_ledger_balance_full():
    """Tripartite ledger on the full sample."""
    return _tripartite_sweep(200, seed=119)


@invariant_check
def chain_ledger_balance():
    """Chain ledger over four and five qubits."""
    rng = np.random.default_rng(20)
    worst = 0.0
    for n in (4, 5):
        for _ in range(10):
            worst = max(worst, abs(chain_ledger(_random_state(rng, [2] * n)).residual))
        worst = max(worst, abs(chain_ledger(ghz(n)).residual), abs(chain_ledger(w(n)).residual))
    return worst < 1e-8, f"max residual {worst:.3e}"


@invariant_check
def pair_ledgers_of_named_states():
    """Every pair marginal of GHZ and W balances its ledger."""
    worst = 0.0
    for state in (ghz(3), w(3)):
        for pair in combinations(range(3), 2):
            worst = max(worst, abs(bipartite_ledger(partial_trace(state, pair), 0, 1).residual))
    return worst < 1e-9, f"max residual {worst:.3e}"


# ---------------------------------------------------------------------------
# Time correlations
# ---------------------------------------------------------------------------

def _qubit_sweep(count: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        r1 = random_bloch_vector(rng)
        n1, n2 = random_unit_vector(rng), random_unit_vector(rng)
        shrink = float(rng.uniform())
        closed = qubit_tcorr_closed_form(r1, n1, shrink, n2)
        matrix = mutual_information_12(qubit_protocol(r1, n1, shrink, n2).distribution())
        worst = max(worst, abs(closed - matrix))
    return worst < 1e-12, f"max disagreement {worst:.3e} over {count} configurations"


def _optimality_sweep(dims, per_dim: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for d in dims:
        for _ in range(per_dim):
            spec = _random_spectrum(d, rng)
            report = analyze_protocol(optimal_protocol(spec))
            target = np.log2(d) - von_neumann(spec.to_density())
            worst = max(
                worst,
                abs(report.mutual_information - target),
                float(np.max(np.abs(np.asarray(report.p1) - 1.0 / d))),
                float(np.max(np.abs(np.asarray(report.p2) - 1.0 / d))),
            )
    return worst < 1e-9, f"max deviation {worst:.3e}"


@invariant_check
def qubit_closed_form_agreement():
    """Bloch-sphere closed form matches the matrix pipeline."""
    return _qubit_sweep(200, seed=21)


@invariant_check(level=SuiteLevel.ALL)
def qubit_closed_form_agreement_full():
    """Bloch-sphere closed form on the full sample."""
    return _qubit_sweep(1000, seed=121)


@invariant_check
def optimal_protocol_attains_coherent_entropy():
    """The cyclic protocol reaches I(1:2) = log2 d - S with uniform marginals, d = 2, 3."""
    return _optimality_sweep((2, 3), 10, seed=22)


@invariant_check(level=SuiteLevel.ALL)
def optimal_protocol_sweep():
    """Optimality for d = 2, 3, 4, and random equivalent protocols stay below the bound."""
    passed, message = _optimality_sweep((2, 3, 4), 20, seed=122)
    if not passed:
        return False, message
    rng = np.random.default_rng(123)
    excess = -np.inf
    for k in range(100):
        d = int(rng.integers(2, 5))
        spec = _random_spectrum(d, rng)
        report = analyze_protocol(random_protocol(spec, seed=1000 + k))
        excess = max(excess, report.mutual_information - report.bound)
    return excess <= 1e-9, f"{message}; largest excess of random protocols {excess:.3e}"


@invariant_check(level=SuiteLevel.ALL)
def monte_carlo_agreement():
    """Sampled I(1:2) lies within three standard errors of the exact value."""
    protocol = optimal_protocol(Spectrum.from_probabilities([0.5, 0.3, 0.2]))
    exact = mutual_information_12(protocol.distribution())
    sample = sample_protocol(
        protocol.rho_in, protocol.meas1, protocol.channel, protocol.meas2,
        n_samples=1_000_000, seed=7, shards=4,
    )
    deviation = abs(sample.mutual_information - sample.bias - exact)
    bound = 3.0 * sample.standard_error + 1e-6
    return deviation <= bound, f"deviation {deviation:.3e}, bound {bound:.3e}"


# ---------------------------------------------------------------------------
# Entanglement
# ---------------------------------------------------------------------------

@invariant_check
def entanglement_local_invariance():
    """E_f is unchanged by local unitaries U1 x U2."""
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(200):
        rho = _random_state(rng, [2, 2])
        local = np.kron(random_unitary(2, rng), random_unitary(2, rng))
        worst = max(worst, abs(concurrence(rho.rotate(local)).e_f - concurrence(rho).e_f))
    return worst < 1e-9, f"max change {worst:.3e}"


# ---------------------------------------------------------------------------
# Optimizer
# ---------------------------------------------------------------------------

@invariant_check(level=SuiteLevel.ALL)
def extremal_coherent_entropy_oracle():
    """Searching U(d) reproduces max = log2 d, min = S(rho) and S_c for d in 2, 3, 4, 8."""
    rng = np.random.default_rng(24)
    cfg = OptimizerConfig(restarts=1)
    worst_ends = worst_sc = 0.0
    for k in range(50):
        d = EXTREMAL_DIMS[k % len(EXTREMAL_DIMS)]
        rho = random_density(d, seed=rng)
        found = coherent_entropy_extremal(rho, cfg)
        worst_ends = max(
            worst_ends,
            abs(found.max_diag - np.log2(d)),
            abs(found.min_diag - von_neumann(rho)),
        )
        worst_sc = max(worst_sc, abs(found.sc - coherent_entropy(rho)))
    passed = worst_ends < 2e-6 and worst_sc < 5e-6
    return passed, f"extremes off by {worst_ends:.3e}, S_c off by {worst_sc:.3e}"


@invariant_check(level=SuiteLevel.ALL)
def bell_local_coherence_gap():
    """Local unitaries on a Bell pair reach S_c^loc = 1, so G = 1 and L = 1."""
    result = sc_local(bell(), [PartitionLabel.of(0), PartitionLabel.of(1)], OptimizerConfig(restarts=8))
    passed = abs(result.gap - 1.0) < 2e-2 and abs(result.local - 1.0) < 2e-2
    return passed, f"G={result.gap:.6f}, L={result.local:.6f}"


@invariant_check(level=SuiteLevel.ALL)
def w_tripartite_local_coherence_gap():
    """Single-qubit local unitaries on W reach min log2 3 and max 2 + H2(1/3), so G = 5/3."""
    parts = [PartitionLabel.of(i) for i in range(3)]
    result = sc_local(w(3), parts, OptimizerConfig(restarts=8))
    return abs(result.gap - 5.0 / 3.0) < 5e-2, f"G={result.gap:.6f}"


__all__ = ["FIXTURE_TOL"]
