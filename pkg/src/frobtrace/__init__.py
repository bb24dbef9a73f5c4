"""Frobenius trace statistics for hyperelliptic Jacobians."""

__version__ = "0.1.0"
