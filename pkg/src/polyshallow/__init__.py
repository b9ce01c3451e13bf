"""Polychromatic colorings and shallow hitting sets of range-capturing and
arithmetic-progression hypergraphs: constructions, falsifiers, embeddings,
and exact solvers."""

__version__ = "0.1.0"
