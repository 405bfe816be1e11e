"""Exact analysis of base-q automatic sequences and multiplicative ones."""

__version__ = "0.1.0"
