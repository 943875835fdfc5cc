"""Pairwise entanglement of two-qubit marginals."""

from .concurrence import ConcurrenceResult, concurrence, entanglement_of_formation
