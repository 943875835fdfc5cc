"""
Summary tables of named states.

For every marginal (single sites, pairs, ..., the whole) a table lists S and
S_c. Multi-site marginals add the coherence gap G over their single-site
factors; two-site marginals also list the mutual information I, the local
correlations L = I - G and, for qubit pairs, the entanglement of formation.
"""

import csv
import io
import logging
from itertools import combinations
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field
from rich.table import Table

from .core.config import OptimizerConfig
from .core.types import PartitionLabel, singletons
from .entanglement.concurrence import concurrence
from .entropy.measures import coherent_entropy, von_neumann
from .multipartite.ledger import mutual_information
from .optimize.local import sc_local
from .state.density import DensityOperator, partial_trace
from .state.factory import make_named_state

logger = logging.getLogger(__name__)

ROWS = ["S", "S_c", "G", "L", "I", "E_f"]
TABLE_STATES = ("bell", "ghz3", "w3")

UNCONVERGED_MARK = "*"
UNCONVERGED_NOTE = "* optimizer did not report convergence for this cell"


class TableCell(BaseModel):
    value: float
    analytic: bool = True
    converged: bool = True


class StateTable(BaseModel):
    """Rows S, S_c, G, L, I, E_f against columns rho_A ... rho_whole."""
    state: str
    columns: List[str]
    cells: Dict[str, Dict[str, TableCell]] = Field(default_factory=dict)

    def get(self, row: str, column: str) -> Optional[float]:
        cell = self.cells.get(row, {}).get(column)
        return None if cell is None else cell.value

    def row(self, row: str) -> List[Optional[float]]:
        return [self.get(row, c) for c in self.columns]

    @property
    def converged(self) -> bool:
        return all(c.converged for r in self.cells.values() for c in r.values())

    def _text(self, row: str, column: str, precision: int) -> str:
        cell = self.cells.get(row, {}).get(column)
        if cell is None:
            return ""
        text = f"{cell.value + 0.0:.{precision}f}"
        return text if cell.converged else text + UNCONVERGED_MARK

    def text_rows(self, precision: int = 6) -> List[List[str]]:
        return [[row] + [self._text(row, c, precision) for c in self.columns] for row in ROWS]

    def header(self) -> List[str]:
        return [self.state] + [f"rho_{c}" for c in self.columns]

    def to_markdown(self, precision: int = 6) -> str:
        header = self.header()
        lines = [
            "| " + " | ".join(header) + " |",
            "|" + "|".join("---" for _ in header) + "|",
        ]
        for cells in self.text_rows(precision):
            lines.append("| " + " | ".join(cells) + " |")
        if not self.converged:
            lines.extend(["", UNCONVERGED_NOTE])
        return "\n".join(lines)

    def to_csv(self, precision: int = 6) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        writer.writerows(self.text_rows(precision))
        return buf.getvalue()

    def to_rich(self, precision: int = 6) -> Table:
        table = Table(title=f"{self.state} marginals")
        for i, name in enumerate(self.header()):
            table.add_column(name, style="cyan" if i == 0 else None, justify="left" if i == 0 else "right")
        for cells in self.text_rows(precision):
            table.add_row(*cells)
        if not self.converged:
            table.caption = UNCONVERGED_NOTE
        return table

    def to_json_dict(self) -> Dict[str, Any]:
        """Full-precision values keyed by row then column."""
        return {
            "state": self.state,
            "columns": self.columns,
            "rows": {
                row: {col: cell.model_dump() for col, cell in cols.items()}
                for row, cols in self.cells.items()
            },
            "converged": self.converged,
        }


def marginal_labels(n_parts: int) -> List[PartitionLabel]:
    """All nonempty subsets, by size then lexicographically."""
    labels = []
    for size in range(1, n_parts + 1):
        for combo in combinations(range(n_parts), size):
            labels.append(PartitionLabel(indices=combo))
    return labels


def build_state_table(
    rho: DensityOperator,
    state: str = "state",
    cfg: Optional[OptimizerConfig] = None,
) -> StateTable:
    """Fill every table cell for `rho`."""
    labels = marginal_labels(rho.n_parts)
    cells: Dict[str, Dict[str, TableCell]] = {row: {} for row in ROWS}

    for label in labels:
        col = label.name
        marginal = partial_trace(rho, label)
        cells["S"][col] = TableCell(value=von_neumann(marginal))
        cells["S_c"][col] = TableCell(value=coherent_entropy(marginal))
        if marginal.n_parts < 2:
            continue

        local = sc_local(marginal, singletons(marginal.n_parts), cfg)
        cells["G"][col] = TableCell(value=local.gap, analytic=False, converged=local.converged)
        if marginal.n_parts == 2:
            cells["I"][col] = TableCell(value=mutual_information(marginal, 0, 1))
            cells["L"][col] = TableCell(
                value=local.local, analytic=False, converged=local.converged
            )
            if tuple(marginal.dims) == (2, 2):
                cells["E_f"][col] = TableCell(value=concurrence(marginal).e_f)
        logger.debug("table %s column %s: G=%.6f", state, col, local.gap)

    return StateTable(state=state, columns=[l.name for l in labels], cells=cells)


def named_state_table(name: str, cfg: Optional[OptimizerConfig] = None) -> StateTable:
    """Table for one of bell, ghz3, w3."""
    return build_state_table(make_named_state(name), name, cfg)


__all__ = [
    "ROWS", "TABLE_STATES", "TableCell", "StateTable", "marginal_labels",
    "build_state_table", "named_state_table",
]
