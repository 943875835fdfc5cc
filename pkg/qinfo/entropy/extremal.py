"""
Coherent entropy by explicit extremization over the full unitary group.

The closed form S_c = log2 d - S makes this redundant; it is kept as an
executable check that the minimum of the diagonal entropy is S(rho) and its
maximum is log2 d.
"""

import logging
from typing import Optional

from pydantic import BaseModel

from ..core.config import OptimizerConfig
from ..core.types import Bits, Direction
from ..state.density import DensityOperator

logger = logging.getLogger(__name__)


class ExtremalEntropy(BaseModel):
    """Both extremes of the diagonal entropy and their spread."""
    max_diag: Bits
    min_diag: Bits
    sc: Bits
    converged: bool = True

    def as_tuple(self):
        return self.max_diag, self.min_diag, self.sc


def coherent_entropy_extremal(
    rho: DensityOperator,
    optimizer: Optional[OptimizerConfig] = None,
) -> ExtremalEntropy:
    """Numerically extremize the diagonal entropy over U(d)."""
    from ..optimize.local import search_diag_entropy

    hi, _ = search_diag_entropy(rho, None, Direction.MAX, optimizer)
    lo, _ = search_diag_entropy(rho, None, Direction.MIN, optimizer)
    result = ExtremalEntropy(
        max_diag=hi.value,
        min_diag=lo.value,
        sc=hi.value - lo.value,
        converged=hi.converged and lo.converged,
    )
    logger.debug("Extremal diagonal entropy: max=%.10f min=%.10f", result.max_diag, result.min_diag)
    return result


__all__ = ["ExtremalEntropy", "coherent_entropy_extremal"]
