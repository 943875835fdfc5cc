"""
Monte Carlo simulation of the two-measurement protocol.

Outcomes are drawn shot by shot in aggregate: first-outcome counts from a
multinomial over p(s1), then second-outcome counts from a multinomial over
p(s2 | s1) for each s1. Work may be split into shards, each with its own
generator seeded by `seed + shard`; shard counts add exactly, so a fixed
(seed, shards) pair always reproduces the same counts.

The plug-in mutual information overestimates I(1:2) by about
(d1 - 1)(d2 - 1) / (2 n ln 2) bits; the estimate is reported uncorrected
alongside that bias and a delta-method standard error.
"""

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from ..core.config import SamplingConfig
from ..core.errors import DomainError
from ..core.types import Bits
from ..state.density import DensityOperator
from .channels import KrausChannel, ProjectiveMeasurement
from .protocol import JointDistribution, mutual_information_12, protocol_distribution

logger = logging.getLogger(__name__)


class EmpiricalDistribution(BaseModel):
    """Raw outcome counts of a sampled protocol run."""
    counts: np.ndarray
    seed: int = 0
    shards: int = 1

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @property
    def n_samples(self) -> int:
        return int(self.counts.sum())

    @property
    def distribution(self) -> JointDistribution:
        return JointDistribution(joint=self.counts / self.n_samples)

    @property
    def mutual_information(self) -> Bits:
        """Plug-in estimate of I(1:2)."""
        return mutual_information_12(self.distribution)

    @property
    def standard_error(self) -> float:
        """Delta-method standard error sqrt(Var[log2 p/(p1 p2)] / n)."""
        dist = self.distribution
        p = dist.joint
        mask = p > 0
        pointwise = np.log2(p[mask] / np.outer(dist.p1, dist.p2)[mask])
        mean = float(np.sum(p[mask] * pointwise))
        variance = float(np.sum(p[mask] * (pointwise - mean) ** 2))
        return float(np.sqrt(max(variance, 0.0) / self.n_samples))

    @property
    def bias(self) -> float:
        """First-order upward bias of the plug-in estimator."""
        d1, d2 = self.counts.shape
        return (d1 - 1) * (d2 - 1) / (2.0 * self.n_samples * np.log(2.0))

    def to_csv(self) -> str:
        """Rows `s1,s2,count` with 0-based outcomes."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["s1", "s2", "count"])
        for (s1, s2), count in np.ndenumerate(self.counts):
            writer.writerow([s1, s2, int(count)])
        return buf.getvalue()


def _normalized(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def _sample_shard(joint: np.ndarray, n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    p1 = _normalized(joint.sum(axis=1))
    counts = np.zeros(joint.shape, dtype=np.int64)
    first = rng.multinomial(n, p1)
    for s1, c in enumerate(first):
        if c:
            counts[s1] = rng.multinomial(c, _normalized(joint[s1]))
    return counts


def sample_protocol(
    rho_in: DensityOperator,
    meas1: ProjectiveMeasurement,
    channel: KrausChannel,
    meas2: ProjectiveMeasurement,
    n_samples: int,
    seed: int = 0,
    shards: int = 1,
    threads: int = 1,
) -> EmpiricalDistribution:
    """Seeded empirical joint counts of the protocol."""
    if n_samples < 1:
        raise DomainError(f"n_samples must be >= 1, got {n_samples}")
    if shards < 1:
        raise DomainError(f"shards must be >= 1, got {shards}")
    joint = protocol_distribution(rho_in, meas1, channel, meas2).joint

    base, extra = divmod(n_samples, shards)
    sizes: List[int] = [base + (1 if k < extra else 0) for k in range(shards)]

    def run(k: int) -> np.ndarray:
        logger.debug("sampling shard %d: %d shots, seed %d", k, sizes[k], seed + k)
        return _sample_shard(joint, sizes[k], seed + k)

    if threads > 1 and shards > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(shards)))
    else:
        parts = [run(k) for k in range(shards)]

    counts = np.sum(parts, axis=0).astype(np.int64)
    counts.setflags(write=False)
    return EmpiricalDistribution(counts=counts, seed=seed, shards=shards)


def sample_with_config(
    rho_in: DensityOperator,
    meas1: ProjectiveMeasurement,
    channel: KrausChannel,
    meas2: ProjectiveMeasurement,
    cfg: Optional[SamplingConfig] = None,
    threads: int = 1,
) -> EmpiricalDistribution:
    cfg = cfg or SamplingConfig()
    return sample_protocol(
        rho_in, meas1, channel, meas2, cfg.n_samples, cfg.seed, cfg.shards, threads
    )


__all__ = ["EmpiricalDistribution", "sample_protocol", "sample_with_config"]
