"""Exact-arithmetic toolkit for Boolean and subspace lattices."""

__version__ = "0.1.0"
