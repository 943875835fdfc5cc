"""
Prepare, measure, decohere, measure.

A state rho_in is measured in basis A (outcome s1), the post-measurement
projector passes through a Kraus channel, and the result is measured in
basis B (outcome s2). The joint law is

    p(s1, s2) = Tr(rho_in P_A^{s1}) Tr(rho_{s1} P_B^{s2}),  rho_{s1} = E(P_A^{s1})

and the mutual information I(1:2) between the two outcomes measures how much
information survives in time. Internally outcomes are 0-based; outcome s here
is outcome s+1 in 1-based notation.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..core.errors import DimensionError, DomainError, InvalidState
from ..core.types import Bits
from ..entropy.measures import binary_entropy, clamp_bits, coherent_entropy, shannon_entropy
from ..state.density import DensityOperator, Spectrum
from ..state.factory import bloch, maximally_mixed, random_density, random_unitary
from .channels import KrausChannel, ProjectiveMeasurement, depolarizing_channel

logger = logging.getLogger(__name__)

DISTRIBUTION_TOL = 1e-9
SPECTRUM_MATCH_TOL = 1e-9
UNIT_TOL = 1e-12


class JointDistribution(BaseModel):
    """p(s1, s2) as a d1 x d2 array with its marginals."""
    joint: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode='before')
    @classmethod
    def validate_joint(cls, values):
        """Entries nonnegative and summing to one."""
        if not isinstance(values, dict):
            return values
        p = np.array(values.get('joint'), dtype=float)
        if p.ndim != 2:
            raise DimensionError(f"Joint distribution must be 2-D, got shape {p.shape}")
        if p.min() < -DISTRIBUTION_TOL:
            raise DomainError(f"Joint distribution has negative entry {p.min():.3e}")
        if abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
            raise DomainError(f"Joint distribution sums to {p.sum():.12g}")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        return {'joint': p}

    @property
    def p1(self) -> np.ndarray:
        return self.joint.sum(axis=1)

    @property
    def p2(self) -> np.ndarray:
        return self.joint.sum(axis=0)

    @property
    def conditional(self) -> np.ndarray:
        """p(s2 | s1); rows with p(s1) = 0 are left at zero."""
        p1 = self.p1[:, None]
        return np.divide(self.joint, p1, out=np.zeros_like(self.joint), where=p1 > 0)


def intermediate_states(meas1: ProjectiveMeasurement, channel: KrausChannel) -> List[DensityOperator]:
    """rho_{s1} = E(P_A^{s1}) for every first outcome."""
    if meas1.d != channel.d:
        raise DimensionError(f"Measurement on {meas1.d} dims, channel on {channel.d}")
    return [
        DensityOperator.from_matrix(channel.apply(meas1.projector(s)), (meas1.d,))
        for s in range(meas1.d)
    ]


def protocol_distribution(
    rho_in: DensityOperator,
    meas1: ProjectiveMeasurement,
    channel: KrausChannel,
    meas2: ProjectiveMeasurement,
) -> JointDistribution:
    """Exact joint outcome distribution of the two-measurement protocol."""
    dims = {rho_in.d, meas1.d, channel.d, meas2.d}
    if len(dims) != 1:
        raise DimensionError(
            f"Protocol dimensions disagree: state {rho_in.d}, meas1 {meas1.d}, "
            f"channel {channel.d}, meas2 {meas2.d}"
        )
    p1 = meas1.probabilities(rho_in.mat)
    cond = np.array([meas2.probabilities(rho.mat) for rho in intermediate_states(meas1, channel)])
    joint = p1[:, None] * cond
    return JointDistribution(joint=joint / joint.sum())


def mutual_information_12(dist: JointDistribution) -> Bits:
    """I(1:2) = sum p(s1,s2) log2 [p(s1,s2) / (p(s1) p(s2))]."""
    p = dist.joint
    outer = np.outer(dist.p1, dist.p2)
    mask = p > 0
    return clamp_bits(float(np.sum(p[mask] * np.log2(p[mask] / outer[mask]))))


def mutual_information_decomposition(dist: JointDistribution) -> Tuple[Bits, Bits]:
    """(C1, C2) with C1 = H(s2), C2 = H(s2 | s1), so that I(1:2) = C1 - C2."""
    c1 = shannon_entropy(dist.p2)
    c2 = clamp_bits(shannon_entropy(dist.joint.ravel()) - shannon_entropy(dist.p1))
    return c1, c2


def _check_unit(v: np.ndarray, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != 3:
        raise DomainError(f"{name} needs 3 components, got {v.size}")
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise DomainError(f"{name} must be a unit vector, has length {np.linalg.norm(v):.15g}")
    return v


def _check_bloch(r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 3:
        raise DomainError(f"Bloch vector needs 3 components, got {r.size}")
    if np.linalg.norm(r) > 1.0 + UNIT_TOL:
        raise DomainError(f"Bloch vector length {np.linalg.norm(r):.6g} exceeds 1")
    return r


def _check_shrink(shrink: float) -> float:
    if not 0.0 <= shrink <= 1.0:
        raise DomainError(f"Shrink factor must lie in [0, 1], got {shrink}")
    return float(shrink)


def qubit_tcorr_closed_form(
    r1: Sequence[float],
    n1hat: Sequence[float],
    shrink: float,
    n2hat: Sequence[float],
) -> Bits:
    """I(1:2) = H2((1 + (r1.n1hat)(n1.n2hat))/2) - H2((1 + n1.n2hat)/2), n1 = shrink n1hat."""
    r1 = _check_bloch(r1)
    n1hat = _check_unit(n1hat, "n1hat")
    n2hat = _check_unit(n2hat, "n2hat")
    shrink = _check_shrink(shrink)
    a = float(np.dot(r1, n1hat))
    c = float(np.clip(shrink * np.dot(n1hat, n2hat), -1.0, 1.0))
    x = float(np.clip((1.0 + a * c) / 2.0, 0.0, 1.0))
    y = float(np.clip((1.0 + c) / 2.0, 0.0, 1.0))
    return clamp_bits(binary_entropy(x) - binary_entropy(y))


def spin_basis(n: Sequence[float]) -> np.ndarray:
    """Eigenvectors of n.sigma as columns, +1 first."""
    x, y, z = (float(c) for c in n)
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    plus = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    minus = np.array([np.sin(theta / 2), -np.exp(1j * phi) * np.cos(theta / 2)])
    return np.column_stack([plus, minus])


class Protocol(BaseModel):
    """A complete measure-decohere-measure setup."""
    rho_in: DensityOperator
    meas1: ProjectiveMeasurement
    channel: KrausChannel
    meas2: ProjectiveMeasurement

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @property
    def d(self) -> int:
        return self.rho_in.d

    def distribution(self) -> JointDistribution:
        return protocol_distribution(self.rho_in, self.meas1, self.channel, self.meas2)

    def as_tuple(self):
        return self.meas1, self.channel, self.meas2


def qubit_protocol(
    r1: Sequence[float],
    n1hat: Sequence[float],
    shrink: float,
    n2hat: Sequence[float],
) -> Protocol:
    """Matrix form of the Bloch-sphere setup: measure along n1hat, depolarize, measure along n2hat."""
    r1 = _check_bloch(r1)
    return Protocol(
        rho_in=bloch(r1),
        meas1=ProjectiveMeasurement(basis=spin_basis(_check_unit(n1hat, "n1hat"))),
        channel=depolarizing_channel(2, _check_shrink(shrink)),
        meas2=ProjectiveMeasurement(basis=spin_basis(_check_unit(n2hat, "n2hat"))),
    )


def cyclic_shift(basis: np.ndarray, n: int) -> np.ndarray:
    """Pi^n = sum_k |k+n><k| in the given basis, labels mod d."""
    return basis @ np.roll(basis, n, axis=1).conj().T


def optimal_protocol(spec: Spectrum) -> Protocol:
    """Protocol whose intermediate states carry every cyclic permutation of `spec`.

    Basis B is the eigenbasis |b_m> of the target state. The first vector of
    basis A is a_0 = sum_m sqrt(lambda_m) |b_m>, so |<a_0|b_m>|^2 = lambda_m, and
    the rest of A completes it to an orthonormal basis. The channel has one
    Kraus operator per pair (m, s):

        M_{m,s} = P_B^m Pi_B^s (Pi_A^s)† P_A^s = sqrt(lambda_{(m-s) mod d}) |b_m><a_s|

    which is complete for any spectrum and maps P_A^s to the spectrum shifted
    by s. Starting from rho_in = I/d both outcome marginals are uniform and
    I(1:2) = log2 d - S(rho).
    """
    if not isinstance(spec, Spectrum):
        raise InvalidState("optimal_protocol needs a Spectrum")
    d = spec.d
    lam = spec.eigenvalues
    b = np.asarray(spec.eigenvectors, dtype=complex)

    a0 = b @ np.sqrt(lam)
    seed_cols = np.column_stack([a0, b[:, 1:]])
    q, r = np.linalg.qr(seed_cols)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    a = q

    ops = []
    for s in range(d):
        pa = np.outer(a[:, s], a[:, s].conj())
        transfer = cyclic_shift(b, s) @ cyclic_shift(a, s).conj().T
        for m in range(d):
            pb = np.outer(b[:, m], b[:, m].conj())
            op = pb @ transfer @ pa
            if np.max(np.abs(op)) > 0:
                ops.append(op)

    protocol = Protocol(
        rho_in=maximally_mixed(d),
        meas1=ProjectiveMeasurement(basis=a),
        channel=KrausChannel(ops=ops),
        meas2=ProjectiveMeasurement(basis=b),
    )
    logger.debug("Optimal protocol for d=%d uses %d Kraus operators", d, len(ops))
    return protocol


def random_protocol(spec: Spectrum, seed: int = 0) -> Protocol:
    """Random protocol whose intermediate states are all unitarily equivalent to `spec`.

    Bases A and B, the input state and one rotation W_s per first outcome are
    drawn at random; the channel uses M_{j,s} = sqrt(lambda_j) W_s |r_j><a_s|,
    so E(P_A^s) = W_s rho W_s†.
    """
    rng = np.random.default_rng(seed)
    d = spec.d
    a = random_unitary(d, rng)
    b = random_unitary(d, rng)
    r = np.asarray(spec.eigenvectors, dtype=complex)
    ops = []
    for s in range(d):
        w = random_unitary(d, rng)
        for j, lam in enumerate(spec.eigenvalues):
            if lam > 0:
                ops.append(np.sqrt(lam) * np.outer(w @ r[:, j], a[:, s].conj()))
    return Protocol(
        rho_in=random_density(d, seed=rng),
        meas1=ProjectiveMeasurement(basis=a),
        channel=KrausChannel(ops=ops),
        meas2=ProjectiveMeasurement(basis=b),
    )


class ProtocolReport(BaseModel):
    """Analytic evaluation of a protocol."""
    d: int
    mutual_information: Bits
    c1: Bits
    c2: Bits
    p1: List[float]
    p2: List[float]
    joint: List[List[float]]
    intermediate_spectra: List[List[float]]
    equivalent_intermediates: bool
    intermediate_coherent_entropy: Optional[Bits] = None
    bound: Optional[Bits] = None
    notes: List[str] = Field(default_factory=list)


def analyze_protocol(protocol: Protocol) -> ProtocolReport:
    """Mutual information, its decomposition and the intermediate-state check.

    When all intermediate states share one spectrum, I(1:2) is compared with
    their coherent entropy. Otherwise the comparison is undefined and the
    report only flags it.
    """
    dist = protocol.distribution()
    i12 = mutual_information_12(dist)
    c1, c2 = mutual_information_decomposition(dist)
    states = intermediate_states(protocol.meas1, protocol.channel)
    spectra = [rho.eigenvalues for rho in states]
    equivalent = all(np.max(np.abs(s - spectra[0])) <= SPECTRUM_MATCH_TOL for s in spectra)

    notes = []
    sc = None
    if equivalent:
        sc = coherent_entropy(states[0])
    else:
        notes.append("intermediate states are not unitarily equivalent; S_c comparison undefined")
        logger.warning("Intermediate states of the protocol are not unitarily equivalent")

    return ProtocolReport(
        d=protocol.d,
        mutual_information=i12,
        c1=c1,
        c2=c2,
        p1=dist.p1.tolist(),
        p2=dist.p2.tolist(),
        joint=dist.joint.tolist(),
        intermediate_spectra=[s.tolist() for s in spectra],
        equivalent_intermediates=equivalent,
        intermediate_coherent_entropy=sc,
        bound=sc,
        notes=notes,
    )


__all__ = [
    "JointDistribution", "Protocol", "ProtocolReport", "intermediate_states",
    "protocol_distribution", "mutual_information_12", "mutual_information_decomposition",
    "qubit_tcorr_closed_form", "qubit_protocol", "spin_basis", "cyclic_shift",
    "optimal_protocol", "random_protocol", "analyze_protocol",
]
