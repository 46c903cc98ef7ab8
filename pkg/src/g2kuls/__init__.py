"""Finite-field verification of a non-conjugate G2 family with conjugate restrictions."""

from .chevalley import build_basis
from .cohomology import Cohomology, linear_cocycle_dims
from .counterexample import ConfigError, Counterexample
from .gf2m import field_make
from .g2group import g2, group_for

__all__ = [
    "Cohomology",
    "ConfigError",
    "Counterexample",
    "build_basis",
    "field_make",
    "g2",
    "group_for",
    "linear_cocycle_dims",
]

__version__ = "0.1.0"
