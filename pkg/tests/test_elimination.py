from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings

from cylindre.elimination import (content, discriminant, gcd, project, psc, reducta, resultant,
                                  square_free_factors)
from cylindre.formula import parse_polynomial
from cylindre.poly import Polynomial

from conftest import from_sympy, polynomials, random_poly, to_sympy

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, variables=XY):
    return parse_polynomial(text, variables)


def same_up_to_constant(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.primitive() == b.primitive() or a.primitive() == -b.primitive()


def test_projection_examples():
    assert project([P("x^2 + y^2 - 1")]) == [P("x^2 - 1")]
    assert project([P("y - x")]) == []
    assert project([P("y - x"), P("y + x")]) == [P("x")]
    assert project([P("x*y - 1")]) == [P("x")]
    assert project([P("y^2 - x^2*(x + 1)")]) == [P("x"), P("x + 1")]


def test_reducta_stop_at_constant_leading_coefficient():
    f = P("x*y^2 + y + x")
    assert reducta(f, 1) == [f, P("y + x")]
    assert reducta(P("y^2 + x*y"), 1) == [P("y^2 + x*y")]


def test_psc_matches_sympy_subresultants():
    f = P("y^3 - x*y + 1")
    g = P("y^2 + x")
    y = sympy.Symbol("y")
    subs = sympy.subresultants(to_sympy(f)[0], to_sympy(g)[0], y)
    assert same_up_to_constant(resultant(f, g, 1), from_sympy(sympy.resultant(to_sympy(f)[0], to_sympy(g)[0], y), XY))
    # psc_1 is the leading coefficient of the degree-1 subresultant
    sub1 = [s for s in subs if sympy.degree(s, y) == 1]
    if sub1:
        lc = sympy.Poly(sub1[0], y).LC()
        assert same_up_to_constant(psc(f, g, 1, 1), from_sympy(lc, XY))


def test_resultant_and_discriminant_against_sympy(rng):
    for _ in range(25):
        f = random_poly(rng, XY, max_deg=3, max_terms=4, last_deg=3)
        g = random_poly(rng, XY, max_deg=3, max_terms=4, last_deg=3)
        if f.degree(1) < 1 or g.degree(1) < 1:
            continue
        fx, (x, y) = to_sympy(f)
        gx, _ = to_sympy(g)
        expected = from_sympy(sympy.resultant(fx, gx, y), XY)
        assert resultant(f, g, 1) == expected or resultant(f, g, 1) == -expected
        if f.degree(1) >= 2:
            d = from_sympy(sympy.resultant(fx, sympy.diff(fx, y), y), XY)
            assert same_up_to_constant(discriminant(f, 1), d)


def test_gcd_against_sympy(rng):
    for _ in range(30):
        c = random_poly(rng, XYZ, max_deg=2, max_terms=3)
        a = random_poly(rng, XYZ, max_deg=2, max_terms=3) * c
        b = random_poly(rng, XYZ, max_deg=2, max_terms=3) * c
        ax, _ = to_sympy(a)
        bx, _ = to_sympy(b)
        expected = from_sympy(sympy.gcd(ax, bx), XYZ) if not (a.is_zero() and b.is_zero()) else a
        assert same_up_to_constant(gcd(a, b), expected)


def test_content():
    f = P("x^2*y^2 - x*y^2 + (x^2 - x)*y")
    assert same_up_to_constant(content(f, 1), P("x^2 - x"))


@settings(max_examples=40, deadline=None)
@given(polynomials(XY, max_deg=3, max_terms=3))
def test_square_free_factors_reassemble(f):
    if f.is_zero() or f.is_constant():
        return
    kappa, factors = square_free_factors(f * f)
    product = Polynomial.constant(XY, kappa)
    for g, e in factors:
        product = product * g ** e
    assert product == f * f
    assert all(e % 2 == 0 for _, e in factors)
    # factors are pairwise coprime
    for (a, _), (b, _) in zip(factors, factors[1:]):
        assert gcd(a, b).is_constant()


def test_projection_soundness_on_grid(rng):
    """Where the projected factors keep their signs, the root count of f over x is constant."""
    for _ in range(10):
        f = random_poly(rng, XY, max_deg=2, max_terms=4, last_deg=3)
        if f.degree(1) < 1:
            continue
        proj = project([f])
        crit = set()
        for h in proj:
            fx, (x, _) = to_sympy(h)
            for r in sympy.Poly(fx, x).real_roots():
                crit.add(float(r))
        crit = sorted(crit)
        edges = [-50.0] + crit + [50.0]
        for lo, hi in zip(edges, edges[1:]):
            counts = set()
            for t in (lo + (hi - lo) * k / 5 for k in (1, 2, 3, 4)):
                q = Fraction(t).limit_denominator(10 ** 6)
                fy = f.substitute({0: q})
                expr, (_, y) = to_sympy(fy)
                counts.add(len(set(sympy.Poly(expr, y).real_roots())) if fy.degree(1) > 0 else 0)
            assert len(counts) == 1
