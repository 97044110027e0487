"""Entropy-production decomposition toolkit for a qubit under generalized amplitude damping."""

__version__ = "1.0.0"
