"""Finite-section laboratory for multilinear Schur multipliers of divided differences."""
__version__ = "0.1.0"
