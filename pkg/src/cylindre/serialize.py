"""JSON-ready views of library objects.

Rationals become strings "num/den" in lowest terms (or "n"); algebraic
numbers become {"poly": ..., "interval": [lo, hi]}. Floats appear only in
explicit ``approx`` annotations.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .cad import Cell, Decomposition
from .connectivity import ComponentDescription
from .formula import format_formula
from .poly import Polynomial, format_polynomial, format_rational
from .roots import AlgebraicNumber, Evaluator

SCHEMA = "cylindre/1"


def rational(c) -> str:
    return format_rational(Fraction(c))


def coordinate(c):
    if isinstance(c, AlgebraicNumber):
        if c.is_rational:
            return rational(c.lo)
        return {"poly": format_polynomial(c.defining), "interval": [rational(c.lo), rational(c.hi)]}
    return rational(c)


def poly(p: Polynomial) -> str:
    return format_polynomial(p)


def kind(k: tuple) -> str:
    if k[0] == "section":
        return f"section({k[1]})"
    return f"sector({k[1]},{k[2]})"


def approximate(sample, variables, width: Fraction = Fraction(1, 2 ** 40)) -> list[float]:
    """Floats for a sample point, refining algebraic coordinates first."""
    ev = Evaluator(sample.coords, variables)
    out = []
    for k in range(len(sample.coords)):
        ev.refine_to(k, width)
        out.append(float((ev.lo[k] + ev.hi[k]) / 2))
    return out


def cell(c: Cell, approx: bool = False, input_signs=None, variables=None) -> dict:
    out = {
        "path": list(c.path),
        "kinds": [kind(k) for k in c.kinds],
        "sample": [coordinate(x) for x in c.sample.coords],
        "signs": [list(s) for s in c.signs],
    }
    if input_signs is not None:
        out["input_signs"] = list(input_signs)
    if approx:
        values = approximate(c.sample, variables) if variables else c.sample.approx()
        out["approx"] = [round(v, 12) for v in values]
    return out


def decomposition_summary(d: Decomposition) -> dict:
    return {
        "variables": list(d.variables),
        "cells": len(d.leaves()),
        "families": [[poly(p) for p in fam] for fam in d.families],
        "stack_sizes": [d.stack_sizes(k) for k in range(1, d.dimension + 1)],
        "nullified": [list(b) for b in d.nullified_cells()],
        "derivative_closed": d.thom,
    }


def component(k: int, comp: ComponentDescription) -> dict:
    return {
        "component": k,
        "cells": [list(p) for p in comp.cells],
        "formula": format_formula(comp.formula),
        "tree": [[list(a), list(b)] for a, b in comp.tree],
    }


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))
