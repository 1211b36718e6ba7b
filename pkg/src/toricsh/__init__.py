"""Toric symplectic cohomology toolkit - SH computations for toric models."""

__version__ = "0.1.0"
