"""Retract rationality of algebraic tori decided from character lattices."""

__version__ = "0.1.0"
