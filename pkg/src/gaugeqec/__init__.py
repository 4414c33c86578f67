"""Gauge-covariant stabilizer codes and simulation tools for Z2 lattice gauge theory."""

from gaugeqec.pauli import PauliString, PauliSum

__all__ = ["PauliString", "PauliSum"]
__version__ = "0.1.0"
