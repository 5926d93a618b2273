"""Tilting modules of the Auslander algebra of K[x]/(x^n) and rational permutation braids."""

__version__ = "0.1.0"
