from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from cylindre.poly import Polynomial


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.variables)
    if not isinstance(syms, tuple):
        syms = (syms,)
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        out += term
    return sympy.expand(out), syms


def from_sympy(expr, variables) -> Polynomial:
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(variables))
    terms = {}
    for mono, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(mono)] = Fraction(int(c.p), int(c.q))
    return Polynomial(variables, terms)


def random_poly(rng: random.Random, variables, max_deg=4, max_terms=5, height=10, last_deg=None):
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [rng.randint(0, max_deg) for _ in range(n)]
        if last_deg is not None:
            e[-1] = rng.randint(0, last_deg)
        terms[tuple(e)] = Fraction(rng.randint(-height, height))
    return Polynomial(variables, terms)


@st.composite
def polynomials(draw, variables=("x", "y", "z"), max_deg=4, max_terms=5, height=10):
    n = len(variables)
    count = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(count):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[e] = Fraction(draw(st.integers(-height, height)), draw(st.integers(1, 3)))
    return Polynomial(variables, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)
