"""Exact cylindrical decomposition of semi-algebraic sets and generic polynomial division."""
from __future__ import annotations

from .algebra import (Shear, UnivariateView, apply_shear, derivative, elementary_symmetric,
                      find_shear, initial_form, newton_symmetrize, sigma_embed, single_equation)
from .cad import Cell, Decomposition, decompose, lift_stack, locate, satisfying_cells
from .connectivity import (AdjacencyGraph, ComponentDescription, adjacency, components,
                           connected_components)
from .division import (GenericDivision, Prepared, generic_divide, generic_divide_via_roots,
                       prepare, root_bound, weierstrass_divide)
from .elimination import project
from .formula import Atom, And, Or, format_formula, parse_formula, parse_polynomial
from .oracle import grid_oracle
from .poly import Polynomial
from .roots import AlgebraicNumber, SamplePoint, isolate_real_roots, refine, sign_at, square_free

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGraph", "AlgebraicNumber", "And", "Atom", "Cell", "ComponentDescription",
    "Decomposition", "GenericDivision", "Or", "Polynomial", "Prepared", "SamplePoint", "Shear",
    "UnivariateView", "adjacency", "apply_shear", "components", "connected_components",
    "decompose", "derivative", "elementary_symmetric", "find_shear", "format_formula",
    "generic_divide", "generic_divide_via_roots", "grid_oracle", "initial_form",
    "isolate_real_roots", "lift_stack", "locate", "newton_symmetrize", "parse_formula",
    "parse_polynomial", "prepare", "project", "refine", "root_bound", "satisfying_cells",
    "sigma_embed", "sign_at", "single_equation", "square_free", "weierstrass_divide",
]
