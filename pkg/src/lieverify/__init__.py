"""Exact finite-field computations for unipotent subgroups of GL, SL and Sp."""

__version__ = "0.1.0"
