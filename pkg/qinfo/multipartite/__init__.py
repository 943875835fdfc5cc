"""Mutual information and coherent-entropy conservation ledgers."""

from .ledger import (
    InfoLedger,
    InfoTerm,
    PartTerm,
    bipartite_ledger,
    chain_ledger,
    max_residual,
    mutual_information,
    tripartite_ledger,
    tripartite_ledgers,
)
