"""Exact quantum weight enumerators for stabilizer codes and quantum-lego networks."""

__version__ = "0.1.0"
