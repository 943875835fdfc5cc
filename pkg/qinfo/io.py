"""
Text formats: JSON density operators and channels, state/partition/spectrum
specifications used on the command line.

Matrices are encoded row-major as nested lists of [re, im] pairs:

    {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
    {"kraus": [matrix, matrix, ...]}
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from .core.errors import DimensionError, StateParseError
from .core.types import PartitionLabel, as_dimension, check_partition
from .state.density import DensityOperator, Spectrum
from .state.factory import make_named_state
from .timechannel.channels import KrausChannel

logger = logging.getLogger(__name__)

_NAMED_WITHOUT_PARAMS = {"bell", "ghz3", "w3"}
_NAMED_WITH_PARAMS = {
    "mixed": "maximally_mixed",
    "bloch": "bloch",
    "pure": "pure_qubit",
    "diag": "diag",
    "ghz": "ghz",
    "w": "w",
}


def encode_matrix(mat: np.ndarray) -> List[List[List[float]]]:
    mat = np.asarray(mat, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def decode_matrix(data: Any) -> np.ndarray:
    """Nested [re, im] lists to a complex square matrix."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as e:
        raise StateParseError(f"Matrix entries must be [re, im] number pairs: {e}") from e
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise StateParseError(
            f"Matrix must be a square array of [re, im] pairs, got shape {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


def density_to_json(rho: DensityOperator) -> Dict[str, Any]:
    return {"dims": list(rho.dims), "matrix": encode_matrix(rho.mat)}


def density_from_json(data: Dict[str, Any]) -> DensityOperator:
    """Decode a density operator; shape problems are parse errors, invariant violations are InvalidState."""
    if not isinstance(data, dict) or "dims" not in data or "matrix" not in data:
        raise StateParseError("Density JSON needs 'dims' and 'matrix' keys")
    try:
        dims = [as_dimension(d) for d in data["dims"]]
    except (TypeError, DimensionError) as e:
        raise StateParseError(f"'dims' must be a list of integers: {e}") from e
    if not dims or any(d < 2 for d in dims):
        raise StateParseError(f"Subsystem dimensions must be >= 2, got {dims}")
    mat = decode_matrix(data["matrix"])
    if mat.shape[0] != int(np.prod(dims)):
        raise StateParseError(
            f"Matrix of size {mat.shape[0]} does not match dims {dims} (product {int(np.prod(dims))})"
        )
    return DensityOperator.from_matrix(mat, dims)


def channel_to_json(channel: KrausChannel) -> Dict[str, Any]:
    return {"kraus": [encode_matrix(op) for op in channel.ops]}


def channel_from_json(data: Dict[str, Any]) -> KrausChannel:
    if not isinstance(data, dict) or not isinstance(data.get("kraus"), list):
        raise StateParseError("Channel JSON needs a 'kraus' list")
    return KrausChannel(ops=[decode_matrix(m) for m in data["kraus"]])


def _read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    if not path.exists():
        raise StateParseError(f"File not found: {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise StateParseError(f"Invalid JSON in {path}: {e}") from e


def load_density(path: Union[str, Path]) -> DensityOperator:
    return density_from_json(_read_json(path))


def save_density(rho: DensityOperator, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(density_to_json(rho), indent=2))


def load_channel(path: Union[str, Path]) -> KrausChannel:
    return channel_from_json(_read_json(path))


def save_channel(channel: KrausChannel, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(channel_to_json(channel), indent=2))


def parse_floats(text: str, what: str = "value list") -> List[float]:
    """Comma-separated reals."""
    items = [t.strip() for t in text.split(",")]
    if not text.strip() or any(not t for t in items):
        raise StateParseError(f"Empty entry in {what} '{text}'")
    try:
        return [float(t) for t in items]
    except ValueError as e:
        raise StateParseError(f"Could not parse {what} '{text}': {e}") from e


def parse_state_spec(spec: str) -> DensityOperator:
    """`bell|ghz3|w3|ghz:<n>|w:<n>|mixed:<d>|bloch:<x,y,z>|pure:<theta,phi>|diag:<p,...>|file:<path>`."""
    spec = spec.strip()
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name == "file":
        if not arg:
            raise StateParseError("file: needs a path")
        return load_density(arg)
    if name in _NAMED_WITHOUT_PARAMS:
        if arg:
            raise StateParseError(f"State '{name}' takes no parameters")
        return make_named_state(name)
    if name in _NAMED_WITH_PARAMS:
        if not arg:
            raise StateParseError(f"State '{name}' needs parameters after ':'")
        params = parse_floats(arg, f"{name} parameters")
        if name in ("mixed", "ghz", "w") and (len(params) != 1 or params[0] != int(params[0])):
            raise StateParseError(f"State '{name}' takes one integer, got '{arg}'")
        return make_named_state(_NAMED_WITH_PARAMS[name], params)
    raise StateParseError(f"Unknown state specification '{spec}'")


def parse_partition(spec: str, n_parts: int) -> List[PartitionLabel]:
    """`0|1|2`, `01|2` or `0,1|2`: pipe-separated groups of subsystem indices."""
    groups = spec.strip().split("|")
    labels = []
    for group in groups:
        group = group.strip()
        if not group:
            raise StateParseError(f"Empty group in partition '{spec}'")
        tokens = [t.strip() for t in group.split(",")] if "," in group else list(group)
        if any(not t.isdigit() for t in tokens):
            raise StateParseError(f"Partition group '{group}' must contain subsystem indices")
        indices = [int(t) for t in tokens]
        if len(set(indices)) != len(indices):
            raise StateParseError(f"Repeated index in partition group '{group}'")
        labels.append(PartitionLabel(indices=indices))
    check_partition(labels, n_parts)
    return labels


def parse_spectrum(text: str) -> Spectrum:
    """Comma-separated probabilities of a target spectrum."""
    return Spectrum.from_probabilities(parse_floats(text, "spectrum"))


def format_partition(parts: Sequence[PartitionLabel]) -> str:
    return "|".join(",".join(str(i) for i in p.indices) for p in parts)


__all__ = [
    "encode_matrix", "decode_matrix", "density_to_json", "density_from_json",
    "channel_to_json", "channel_from_json", "load_density", "save_density",
    "load_channel", "save_channel", "parse_floats", "parse_state_spec",
    "parse_partition", "parse_spectrum", "format_partition",
]
