"""Finitely supported ideals: constellations, point bases and adjoints."""

__version__ = "0.1.0"
