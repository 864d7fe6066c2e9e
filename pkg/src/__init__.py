"""Eigenvalue toolkit for Schroedinger operators with translated potentials."""
__version__ = "0.1.0"
