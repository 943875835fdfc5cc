"""
Multi-start extremization of diagonal entropy over product unitaries.

Each restart runs L-BFGS-B on the generator parameters with a batched
central finite-difference gradient, then a derivative-free coordinate
polish that halves its step until `step_tolerance`. Restart 0 starts at the
identity; restart k >= 1 draws theta uniformly from [-pi, pi] with its own
generator seeded by `seed + k`. The best restart wins, ties going to the
lowest index, so the result does not depend on the thread count.
"""

import logging
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.optimize import minimize

from ..core.config import OptimizerConfig
from ..core.errors import ConvergenceWarning, NumericalFailure
from ..core.types import Direction, StartKind
from ..entropy.measures import shannon_entropy
from .unitary import batched_kron, factor_unitaries, permute_subsystems

logger = logging.getLogger(__name__)

# Minimum decrease for the polish to accept a move
_POLISH_EPS = 1e-14


class RestartTrace(BaseModel):
    """What a single restart did and where it ended."""
    index: int
    start: StartKind
    value: float
    converged: bool
    iterations: int
    evaluations: int
    elapsed: float = 0.0
    message: str = ""


class SearchOutcome(BaseModel):
    """Best restart of a multi-start search plus the trace of every restart."""
    direction: Direction
    value: float
    theta: np.ndarray
    best_index: int
    converged: bool
    traces: List[RestartTrace]

    class Config:
        arbitrary_types_allowed = True

    @property
    def restart_values(self) -> List[float]:
        return [t.value for t in self.traces]


class DiagonalEntropyObjective:
    """Diagonal entropy of U† rho U for U a product over `factor_dims`.

    `rho_mat` must already be permuted so that the factors are contiguous and
    in the order of `factor_dims`. Values are signed so that minimization
    of the objective extremizes in `direction`.
    """

    def __init__(self, rho_mat: np.ndarray, factor_dims: Sequence[int], direction: Direction):
        self.rho = np.asarray(rho_mat, dtype=complex)
        self.factor_dims = tuple(int(d) for d in factor_dims)
        self.n_params = sum(d * d for d in self.factor_dims)
        self.sign = -1.0 if direction == Direction.MAX else 1.0
        self.evaluations = 0

    def entropies(self, thetas: np.ndarray) -> np.ndarray:
        """Diagonal entropies for a (batch, n_params) array of parameters."""
        thetas = np.atleast_2d(thetas)
        u = batched_kron(factor_unitaries(thetas, self.factor_dims))
        p = np.real(np.sum(u.conj() * (self.rho @ u), axis=1))
        self.evaluations += thetas.shape[0]
        return shannon_entropy(p, axis=-1)

    def values(self, thetas: np.ndarray) -> np.ndarray:
        return self.sign * self.entropies(thetas)

    def __call__(self, theta: np.ndarray) -> float:
        return float(self.values(theta)[0])

    def gradient(self, theta: np.ndarray, step: float) -> np.ndarray:
        """Central finite differences, all 2*n_params points in one batch."""
        shifts = step * np.eye(self.n_params)
        batch = np.vstack([theta + shifts, theta - shifts])
        vals = self.values(batch)
        return (vals[:self.n_params] - vals[self.n_params:]) / (2.0 * step)


def _polish(
    objective: DiagonalEntropyObjective,
    x: np.ndarray,
    fx: float,
    cfg: OptimizerConfig,
) -> Tuple[np.ndarray, float, int, bool]:
    """Compass search: try +-step along every coordinate, halve on failure."""
    step = cfg.initial_step
    eye = np.eye(objective.n_params)
    iterations = 0
    while step >= cfg.step_tolerance:
        if iterations >= cfg.max_iters:
            return x, fx, iterations, False
        iterations += 1
        batch = np.vstack([x + step * eye, x - step * eye])
        vals = objective.values(batch)
        best = int(np.argmin(vals))
        if vals[best] < fx - _POLISH_EPS:
            x, fx = batch[best], float(vals[best])
        else:
            step *= 0.5
    return x, fx, iterations, True


def _run_restart(
    objective: DiagonalEntropyObjective,
    index: int,
    cfg: OptimizerConfig,
) -> Tuple[RestartTrace, np.ndarray]:
    started = time.perf_counter()
    evals_before = objective.evaluations
    if index == 0:
        kind = StartKind.IDENTITY
        x0 = np.zeros(objective.n_params)
    else:
        kind = StartKind.RANDOM
        rng = np.random.default_rng(cfg.seed + index)
        x0 = rng.uniform(-np.pi, np.pi, objective.n_params)

    result = minimize(
        objective,
        x0,
        jac=lambda x: objective.gradient(x, cfg.fd_step),
        method="L-BFGS-B",
        options={"maxiter": cfg.max_iters, "ftol": cfg.objective_tolerance, "gtol": 1e-12},
    )
    if not np.all(np.isfinite(result.x)):
        raise NumericalFailure(f"Restart {index} produced non-finite parameters")

    x, fx = np.asarray(result.x, dtype=float), float(result.fun)
    x, fx, polish_iters, converged = _polish(objective, x, fx, cfg)

    trace = RestartTrace(
        index=index,
        start=kind,
        value=objective.sign * fx,
        converged=converged,
        iterations=int(result.nit) + polish_iters,
        evaluations=objective.evaluations - evals_before,
        elapsed=time.perf_counter() - started,
        message=str(result.message),
    )
    logger.debug(
        "restart %d (%s): value=%.10f converged=%s iterations=%d",
        index, kind.value, trace.value, converged, trace.iterations,
    )
    return trace, x


def extremize(
    rho_mat: np.ndarray,
    space_dims: Sequence[int],
    parts: Sequence[Sequence[int]],
    direction: Direction,
    cfg: Optional[OptimizerConfig] = None,
) -> SearchOutcome:
    """Extremize diagonal entropy of rho over unitaries that factor along `parts`."""
    cfg = cfg or OptimizerConfig()
    direction = Direction(direction)
    order = [i for part in parts for i in part]
    permuted = permute_subsystems(np.asarray(rho_mat), space_dims, order)
    factor_dims = [int(np.prod([space_dims[i] for i in part])) for part in parts]

    n_starts = cfg.restarts + 1

    def run(index: int) -> Tuple[RestartTrace, np.ndarray]:
        objective = DiagonalEntropyObjective(permuted, factor_dims, direction)
        return _run_restart(objective, index, cfg)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(run, range(n_starts)))
    else:
        results = [run(i) for i in range(n_starts)]

    # Deterministic fold: best signed objective, then lowest index
    sign = -1.0 if direction == Direction.MAX else 1.0
    best_index = min(range(n_starts), key=lambda i: (sign * results[i][0].value, i))
    traces = [r[0] for r in results]
    converged = any(t.converged for t in traces)
    outcome = SearchOutcome(
        direction=direction,
        value=traces[best_index].value,
        theta=results[best_index][1],
        best_index=best_index,
        converged=converged,
        traces=traces,
    )

    agreeing = sum(abs(t.value - outcome.value) <= cfg.objective_tolerance for t in traces)
    logger.debug(
        "%s diagonal entropy over %d factor(s): %.10f (restart %d, %d/%d restarts agree)",
        direction.value, len(factor_dims), outcome.value, best_index, agreeing, n_starts,
    )
    if not converged:
        warnings.warn(
            f"No restart converged while searching the {direction.value} diagonal entropy; "
            f"reporting best value {outcome.value:.6f}",
            ConvergenceWarning,
            stacklevel=2,
        )
    return outcome


__all__ = ["RestartTrace", "SearchOutcome", "DiagonalEntropyObjective", "extremize"]
