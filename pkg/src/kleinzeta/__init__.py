"""Exact local zeta functions of the Klein quartic and Fermat curves."""

__version__ = "0.1.0"
