"""Borel orbits of 2-nilpotent matrices in classical Lie algebras and their closures."""

__version__ = "0.1.0"
