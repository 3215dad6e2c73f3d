"""Exact Chayet-Garibaldi algebras and their vertex-algebra realization."""

__version__ = "0.1.0"
