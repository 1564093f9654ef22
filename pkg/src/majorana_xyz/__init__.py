"""Toolkit for the Majorana-XYZ subsystem code on the L x L triangular torus."""

from __future__ import annotations

from .code import CodeStructure, build_code
from .lattice import Lattice
from .pauli import PauliWord

__all__ = ["CodeStructure", "Lattice", "PauliWord", "build_code"]
__version__ = "0.1.0"
