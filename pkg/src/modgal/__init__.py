"""Exact arithmetic for mod-p Galois representations and Hecke eigensystems."""

__version__ = "0.1.0"
