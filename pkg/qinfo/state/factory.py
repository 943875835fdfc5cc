"""
Named and random states.

Named pure states are assembled from exact amplitudes; random states use
seeded numpy generators so that property suites are reproducible.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from ..core.errors import DimensionError, DomainError, InvalidState
from .density import DensityOperator

logger = logging.getLogger(__name__)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Names accepted by make_named_state, with aliases
_ALIASES = {
    "bell": "bell",
    "ghz3": "ghz3",
    "w3": "w3",
    "ghz": "ghz",
    "w": "w",
    "pure_qubit": "pure_qubit",
    "pure": "pure_qubit",
    "bloch": "bloch",
    "maximally_mixed": "maximally_mixed",
    "mixed": "maximally_mixed",
    "diag": "diag",
}


def basis_ket(index: int, d: int) -> np.ndarray:
    ket = np.zeros(d, dtype=complex)
    ket[index] = 1.0
    return ket


def bell() -> DensityOperator:
    """(|00> + |11>)/sqrt(2) on two qubits."""
    psi = (basis_ket(0, 4) + basis_ket(3, 4)) / np.sqrt(2)
    return DensityOperator.from_ket(psi, (2, 2))


def ghz(n: int = 3) -> DensityOperator:
    """(|0...0> + |1...1>)/sqrt(2) on `n` qubits."""
    if n < 2:
        raise InvalidState(f"GHZ state needs at least 2 qubits, got {n}")
    d = 2 ** n
    psi = (basis_ket(0, d) + basis_ket(d - 1, d)) / np.sqrt(2)
    return DensityOperator.from_ket(psi, (2,) * n)


def w(n: int = 3) -> DensityOperator:
    """Uniform superposition of the `n` single-excitation basis states."""
    if n < 2:
        raise InvalidState(f"W state needs at least 2 qubits, got {n}")
    d = 2 ** n
    psi = np.zeros(d, dtype=complex)
    for k in range(n):
        psi[1 << k] = 1.0
    psi /= np.sqrt(n)
    return DensityOperator.from_ket(psi, (2,) * n)


def pure_qubit(theta: float, phi: float) -> DensityOperator:
    """cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>."""
    psi = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex)
    return DensityOperator.from_ket(psi, (2,))


def bloch_matrix(r: Sequence[float]) -> np.ndarray:
    x, y, z = (float(c) for c in r)
    return 0.5 * (IDENTITY_2 + x * PAULI_X + y * PAULI_Y + z * PAULI_Z)


def bloch(r: Sequence[float]) -> DensityOperator:
    """(I + r.sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 3:
        raise InvalidState(f"Bloch vector needs 3 components, got {r.size}")
    length = float(np.linalg.norm(r))
    if length > 1.0 + 1e-12:
        raise InvalidState(f"Bloch vector length {length:.6g} exceeds 1")
    if length > 1.0:
        r = r / length
    return DensityOperator.from_matrix(bloch_matrix(r), (2,))


def maximally_mixed(d: int) -> DensityOperator:
    """I_d / d."""
    if int(d) != d or d < 2:
        raise InvalidState(f"Maximally mixed state needs an integer dimension >= 2, got {d}")
    d = int(d)
    return DensityOperator.from_matrix(np.eye(d, dtype=complex) / d, (d,))


def diag_state(spectrum: Sequence[float]) -> DensityOperator:
    """diag(p) in the computational basis."""
    p = np.asarray(spectrum, dtype=float).reshape(-1)
    if p.size < 2:
        raise InvalidState("Diagonal state needs at least 2 entries")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise InvalidState(f"Diagonal entries {p.tolist()} are not a probability vector")
    return DensityOperator.from_matrix(np.diag(p).astype(complex), (p.size,))


def make_named_state(name: str, params: Optional[Sequence[float]] = None) -> DensityOperator:
    """Build a textbook state by name.

    Supported names: bell, ghz3, w3, ghz (n), w (n), pure_qubit (theta, phi),
    bloch (x, y, z), maximally_mixed (d), diag (p1, ..., pd).
    """
    key = _ALIASES.get(str(getattr(name, "value", name)).lower())
    params = list(params) if params is not None else []

    def expect(count: int) -> None:
        if len(params) != count:
            raise InvalidState(f"State '{key}' takes {count} parameter(s), got {len(params)}")

    if key is None:
        raise InvalidState(f"Unknown state name: {name}")
    if key == "bell":
        expect(0)
        return bell()
    if key == "ghz3":
        expect(0)
        return ghz(3)
    if key == "w3":
        expect(0)
        return w(3)
    if key in ("ghz", "w"):
        expect(1)
        n = params[0]
        if int(n) != n:
            raise InvalidState(f"Qubit count must be an integer, got {n}")
        return ghz(int(n)) if key == "ghz" else w(int(n))
    if key == "pure_qubit":
        expect(2)
        return pure_qubit(*params)
    if key == "bloch":
        expect(3)
        return bloch(params)
    if key == "maximally_mixed":
        expect(1)
        return maximally_mixed(params[0])
    return diag_state(params)


def _rng(seed: Union[int, np.random.Generator, None]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix of independent standard complex normals."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(d: int, seed: Union[int, np.random.Generator, None] = None) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    q, r = np.linalg.qr(ginibre(d, d, _rng(seed)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density(
    d: int,
    rank: Optional[int] = None,
    seed: Union[int, np.random.Generator, None] = 0,
    dims: Optional[Sequence[int]] = None,
) -> DensityOperator:
    """G G† / Tr with G a seeded d x rank Ginibre matrix."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise DomainError(f"Rank must lie in 1..{d}, got {rank}")
    if dims is not None and int(np.prod(dims)) != d:
        raise DimensionError(f"dims {list(dims)} do not multiply to {d}")
    g = ginibre(d, rank, _rng(seed))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityOperator.from_matrix(rho, dims if dims is not None else (d,))


def random_bloch_vector(rng: np.random.Generator, max_length: float = 1.0) -> np.ndarray:
    """Uniform direction, length uniform in [0, max_length]."""
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v) * rng.uniform(0.0, max_length)


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


__all__ = [
    "PAULI_X", "PAULI_Y", "PAULI_Z", "IDENTITY_2",
    "bell", "ghz", "w", "pure_qubit", "bloch", "bloch_matrix", "maximally_mixed",
    "diag_state", "make_named_state", "ginibre", "random_unitary", "random_density",
    "random_bloch_vector", "random_unit_vector", "basis_ket",
]
