"""Shuffle algebras attached to a quiver: exact kernels, products, pairings,
word combinatorics, and constructive basis extraction in fixed degree."""

__version__ = "0.1.0"
