"""Exact combinatorial invariants of toric hyperkahler varieties."""

__version__ = "0.1.0"

from .torus_model import (InvalidTorus, Parameter, TorusSpec, UnsaturatedLattice, Wall,
                          enumerate_walls, is_regular_value, is_smooth, validate_spec)

__all__ = [
    "InvalidTorus", "Parameter", "TorusSpec", "UnsaturatedLattice", "Wall",
    "enumerate_walls", "is_regular_value", "is_smooth", "validate_spec", "__version__",
]
