"""
Mutual information and the coherent-entropy conservation ledgers.

For a bipartition the coherent entropy of the whole splits exactly into the
coherent entropies of the parts plus their mutual information:

    S_c(AB) = S_c(A) + S_c(B) + I(A:B)

and the chain version for k parts adds I(1:2) + I(12:3) + ... + I(1..k-1:k).
Ledgers store every term together with the residual of the identity.
"""

import logging
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from ..core.errors import InvalidPartition
from ..core.types import BITS_CLAMP, Bits, PartitionLabel, check_partition, singletons
from ..entropy.measures import clamp_bits, coherent_entropy, von_neumann
from ..state.density import DensityOperator, partial_trace

logger = logging.getLogger(__name__)

# Residual bounds by number of parts
RESIDUAL_TOL_SMALL = 1e-9   # up to 3 parts
RESIDUAL_TOL_LARGE = 1e-8   # 4 and 5 parts

LabelLike = Union[PartitionLabel, Sequence[int], int]


def _label(value: LabelLike) -> PartitionLabel:
    if isinstance(value, PartitionLabel):
        return value
    return PartitionLabel(indices=value)


def residual_tolerance(n_parts: int) -> float:
    return RESIDUAL_TOL_SMALL if n_parts <= 3 else RESIDUAL_TOL_LARGE


class PartTerm(BaseModel):
    """Entropy and coherent entropy of one marginal."""
    label: str
    indices: List[int]
    entropy: Bits
    coherent_entropy: Bits


class InfoTerm(BaseModel):
    """Mutual information between two disjoint marginals."""
    left: str
    right: str
    value: Bits


class InfoLedger(BaseModel):
    """Every term of a coherent-entropy conservation identity."""
    parts: List[PartTerm]
    informations: List[InfoTerm]
    total_entropy: Bits
    total_coherent_entropy: Bits
    residual: float
    tolerance: float = RESIDUAL_TOL_SMALL
    extra: Dict[str, Bits] = Field(default_factory=dict)

    @property
    def balanced(self) -> bool:
        return abs(self.residual) < self.tolerance

    @property
    def rhs(self) -> Bits:
        return sum(p.coherent_entropy for p in self.parts) + sum(i.value for i in self.informations)

    def term(self, name: str) -> Bits:
        """Look up `S_c(A)`, `S(A)` or `I(A:BC)` style names."""
        for p in self.parts:
            if name == f"S_c({p.label})":
                return p.coherent_entropy
            if name == f"S({p.label})":
                return p.entropy
        for i in self.informations:
            if name == f"I({i.left}:{i.right})":
                return i.value
        if name in self.extra:
            return self.extra[name]
        raise KeyError(name)

    def to_flat_dict(self) -> Dict[str, float]:
        """Flat mapping of term name to value, as printed by the CLI."""
        out: Dict[str, float] = {}
        for p in self.parts:
            out[f"S({p.label})"] = p.entropy
            out[f"S_c({p.label})"] = p.coherent_entropy
        for i in self.informations:
            out[f"I({i.left}:{i.right})"] = i.value
        out.update(self.extra)
        out["S_total"] = self.total_entropy
        out["S_c_total"] = self.total_coherent_entropy
        out["residual"] = self.residual
        return out


def mutual_information(rho: DensityOperator, a: LabelLike, b: LabelLike) -> Bits:
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB)."""
    a, b = _label(a), _label(b)
    a.check_within(rho.n_parts)
    b.check_within(rho.n_parts)
    if a.overlaps(b):
        raise InvalidPartition(f"Labels {a.name} and {b.name} overlap")
    s_a = von_neumann(partial_trace(rho, a))
    s_b = von_neumann(partial_trace(rho, b))
    s_ab = von_neumann(partial_trace(rho, a.union(b)))
    value = s_a + s_b - s_ab
    if value < -BITS_CLAMP:
        logger.warning("Negative mutual information %.3e for %s:%s", value, a.name, b.name)
    return clamp_bits(value)


def _part_term(rho: DensityOperator, label: PartitionLabel) -> PartTerm:
    marginal = partial_trace(rho, label)
    return PartTerm(
        label=label.name,
        indices=list(label.indices),
        entropy=von_neumann(marginal),
        coherent_entropy=coherent_entropy(marginal),
    )


def chain_ledger(rho: DensityOperator, parts: Optional[Sequence[LabelLike]] = None) -> InfoLedger:
    """S_c(1..k) = sum S_c(i) + I(1:2) + I(12:3) + ... + I(1..k-1:k), parts taken in the given order."""
    labels = [_label(p) for p in parts] if parts is not None else singletons(rho.n_parts)
    if len(labels) < 2:
        raise InvalidPartition("A ledger needs at least two parts")
    check_partition(labels, rho.n_parts)

    part_terms = [_part_term(rho, label) for label in labels]
    informations = []
    prefix = labels[0]
    for label in labels[1:]:
        informations.append(
            InfoTerm(left=prefix.name, right=label.name, value=mutual_information(rho, prefix, label))
        )
        prefix = prefix.union(label)

    total_s = von_neumann(rho)
    total_sc = coherent_entropy(rho)
    rhs = sum(p.coherent_entropy for p in part_terms) + sum(i.value for i in informations)
    ledger = InfoLedger(
        parts=part_terms,
        informations=informations,
        total_entropy=total_s,
        total_coherent_entropy=total_sc,
        residual=total_sc - rhs,
        tolerance=residual_tolerance(len(labels)),
    )
    if not ledger.balanced:
        logger.warning(
            "Ledger residual %.3e exceeds %.0e for parts %s",
            ledger.residual, ledger.tolerance, [l.name for l in labels],
        )
    else:
        logger.debug("Ledger residual %.3e for parts %s", ledger.residual, [l.name for l in labels])
    return ledger


def bipartite_ledger(rho: DensityOperator, a: LabelLike, b: LabelLike) -> InfoLedger:
    """S_c(AB) = S_c(A) + S_c(B) + I(A:B) for a bipartition of all subsystems."""
    return chain_ledger(rho, [_label(a), _label(b)])


def tripartite_ledger(rho: DensityOperator, order: Optional[Sequence[int]] = None) -> InfoLedger:
    """S_c(ABC) = S_c(A) + S_c(B) + S_c(C) + I(A:B) + I(AB:C), parts taken in `order`."""
    if rho.n_parts != 3:
        raise InvalidPartition(f"Tripartite ledger needs exactly 3 parts, state has {rho.n_parts}")
    order = list(order) if order is not None else [0, 1, 2]
    if sorted(order) != [0, 1, 2]:
        raise InvalidPartition(f"Order {order} is not a permutation of 0, 1, 2")
    return chain_ledger(rho, [PartitionLabel.of(i) for i in order])


def tripartite_ledgers(rho: DensityOperator) -> List[InfoLedger]:
    """Ledgers for all six part orderings."""
    return [tripartite_ledger(rho, list(p)) for p in permutations(range(3))]


def max_residual(ledgers: Sequence[InfoLedger]) -> float:
    return float(np.max([abs(l.residual) for l in ledgers])) if ledgers else 0.0


__all__ = [
    "PartTerm", "InfoTerm", "InfoLedger", "mutual_information", "bipartite_ledger",
    "tripartite_ledger", "tripartite_ledgers", "chain_ledger", "max_residual",
    "residual_tolerance", "RESIDUAL_TOL_SMALL", "RESIDUAL_TOL_LARGE",
]
