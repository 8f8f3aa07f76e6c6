"""Exact computation of stable Picard groups of moduli spaces of r-Spin
surfaces and r-theta-characteristics."""

from .abelian import FgAbGroup, IntMatrix, SmithForm, smith_normal_form
from .classes import (
    FormalClass,
    Kappa1,
    Lambda,
    MU,
    ModuliContext,
    canonical_coords,
    equals,
    free_coordinate,
    phi_value,
    presentation,
    torsion_generator,
    u_r,
)
from .expr import parse_class

__all__ = [
    "FgAbGroup",
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "FormalClass",
    "Kappa1",
    "Lambda",
    "MU",
    "ModuliContext",
    "canonical_coords",
    "equals",
    "free_coordinate",
    "phi_value",
    "presentation",
    "torsion_generator",
    "u_r",
    "parse_class",
]

__version__ = "0.1.0"
