"""Exact cluster combinatorics for double Bott-Samelson cells."""

__version__ = "0.1.0"
