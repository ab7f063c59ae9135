"""Exact homotopy limit/colimit engine for discrete abelian gauge fields."""

__version__ = "0.1.0"
