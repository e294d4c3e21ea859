"""Finite-level and combinatorial checks around derived Hecke actions."""

__version__ = "0.1.0"
