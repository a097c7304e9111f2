from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cylindre.division import (generic_divide, generic_divide_via_roots, prepare, root_bound,
                               weierstrass_divide)
from cylindre.poly import Polynomial

from conftest import polynomials, random_poly, to_sympy

X1N = ("x1", "xn")


def var(name, variables=X1N):
    return Polynomial.var(variables, name)


def names(res):
    return [Polynomial.var(res.divisor.variables, t) for t in res.t_names]


# -- generic division -----------------------------------------------------------

def test_generic_divide_linear():
    res = generic_divide(var("xn"), 1)
    (t1,) = names(res)
    assert res.quotient == Polynomial.constant(res.divisor.variables, 1)
    assert res.remainder_coeffs == (-t1,)


def test_generic_divide_square():
    res = generic_divide(var("xn") ** 2, 1)
    (t1,) = names(res)
    xn = Polynomial.var(res.divisor.variables, "xn")
    assert res.quotient == xn - t1
    assert res.remainder_coeffs == (t1 ** 2,)


def test_generic_divide_low_degree_passthrough():
    g = var("x1") ** 3
    res = generic_divide(g, 2)
    assert res.quotient.is_zero()
    assert res.remainder_coeffs[0].is_zero()
    assert res.remainder_coeffs[1] == g.with_variables(res.divisor.variables)


@pytest.mark.parametrize("build", [generic_divide, generic_divide_via_roots])
def test_degree_zero_rejected(build):
    with pytest.raises(ValueError):
        build(var("xn"), 0)


def test_via_roots_examples():
    xn = var("xn")
    assert generic_divide_via_roots(xn ** 2, 1) == generic_divide(xn ** 2, 1)
    res = generic_divide_via_roots(xn, 2)
    assert res.quotient.is_zero()
    assert res.remainder_coeffs == (Polynomial.constant(res.divisor.variables, 1),
                                    Polynomial.zero(res.divisor.variables))
    c = Polynomial.constant(X1N, 7)
    for p in (1, 2, 3):
        res = generic_divide_via_roots(c, p)
        assert res.quotient.is_zero()
        assert res.remainder_coeffs[-1] == c.with_variables(res.divisor.variables)
        assert all(h.is_zero() for h in res.remainder_coeffs[:-1])


def test_identity_matches_sympy_division():
    g = var("x1") * var("xn") ** 4 - 3 * var("xn") + 2
    res = generic_divide(g, 2)
    expr, _ = to_sympy(g.with_variables(res.divisor.variables))
    div, _ = to_sympy(res.divisor)
    xn = sympy.Symbol("xn")
    q, r = sympy.div(sympy.Poly(expr, xn), sympy.Poly(div, xn))
    assert sympy.expand(q.as_expr() - to_sympy(res.quotient)[0]) == 0
    assert sympy.expand(r.as_expr() - to_sympy(res.remainder())[0]) == 0


def test_random_suite_identity_and_equivalence(rng):
    for _ in range(60):
        n = rng.randint(1, 3)
        variables = ("x1", "x2", "x3")[:n - 1] + ("xn",)
        g = random_poly(rng, variables, max_deg=3, max_terms=4, last_deg=5)
        p = rng.randint(1, 4)
        a = generic_divide(g, p)
        assert (a.reassemble() - g.with_variables(a.divisor.variables)).is_zero()
        assert a.quotient.degree("xn") == (g.degree("xn") - p if g.degree("xn") >= p else -1) \
            or a.quotient.is_zero()
        assert all(h.degree("xn") <= 0 for h in a.remainder_coeffs)
        assert generic_divide_via_roots(g, p) == a


@settings(max_examples=40, deadline=None)
@given(polynomials(("x1", "xn"), max_deg=4, max_terms=4), st.integers(1, 3),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=5, max_size=5))
def test_specialization_soundness(g, p, point):
    res = generic_divide(g, p)
    # variables are (x1, xn, t1..tp)
    values = point[:2 + p]
    lhs = g.evaluate(values[:2])
    rhs = res.reassemble().evaluate(values)
    assert lhs == rhs


# -- root bound -----------------------------------------------------------------

def test_root_bound_examples():
    assert root_bound([0, 0, 0]) == 0
    assert root_bound([0, -1]) >= 2
    assert root_bound([-3, 2]) >= 6
    assert root_bound([-3, 2]) < 6 + Fraction(1, 10 ** 4)


def test_root_bound_is_close_to_formula():
    v = [Fraction(1, 3), Fraction(-5), Fraction(2, 7)]
    formula = 2 * max(abs(float(c)) ** (1 / j) for j, c in enumerate(v, start=1))
    b = root_bound(v)
    assert formula <= float(b) <= formula * (1 + 1e-5)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(min_value=-100, max_value=100, max_denominator=50), min_size=1, max_size=5))
def test_root_bound_validity(v):
    bound = float(root_bound(v))
    roots = np.roots([1.0] + [float(c) for c in v])
    assert all(abs(z) <= bound * (1 + 1e-6) + 1e-12 for z in roots)


# -- preparation and Weierstrass division ---------------------------------------

def test_prepare_examples():
    x1, xn = var("x1"), var("xn")
    w = prepare(2 * xn ** 2 + x1 * xn)
    assert w.guard == Polynomial.constant(X1N, 2)
    assert [str(r) for r in w.coefficients] == ["1/2*x1", "0"]
    w = prepare(x1 * xn + 1)
    assert w.guard == x1
    (r1,) = w.coefficients
    assert r1.numerator == Polynomial.constant(X1N, 1) and r1.denominator == x1
    g = xn ** 2 - x1
    w = prepare(g)
    assert w.guard == Polynomial.constant(X1N, 1)
    assert all(r.is_polynomial() for r in w.coefficients)


def test_prepare_identity_off_guard():
    x1, xn = var("x1"), var("xn")
    g = (x1 ** 2 + 1) * xn ** 3 - x1 * xn + 5
    w = prepare(g)
    for a in (Fraction(-2), Fraction(1, 3), Fraction(4)):
        for b in (Fraction(-1), Fraction(0), Fraction(5, 2)):
            monic = b ** w.degree + sum(r.evaluate([a, b]) * b ** (w.degree - j)
                                        for j, r in enumerate(w.coefficients, start=1))
            assert w.unit.evaluate([a, b]) * monic == g.evaluate([a, b])


def test_prepare_rejects_constant_in_main():
    with pytest.raises(ValueError):
        prepare(var("x1") ** 2)


def test_weierstrass_examples():
    x1, xn = var("x1"), var("xn")
    one, zero = Polynomial.constant(X1N, 1), Polynomial.zero(X1N)
    d = weierstrass_divide(xn ** 2, prepare(xn ** 2 + x1))
    assert d.quotient.numerator == one
    assert [r.numerator for r in d.remainder] == [zero, -x1]
    d = weierstrass_divide(xn ** 3, prepare(xn - x1))
    assert d.quotient.numerator == xn ** 2 + x1 * xn + x1 ** 2
    assert [r.numerator for r in d.remainder] == [x1 ** 3]
    c = Polynomial.constant(X1N, 4)
    d = weierstrass_divide(c, prepare(x1 * xn ** 2 + 1))
    assert d.quotient.numerator.is_zero()
    assert d.remainder[-1].numerator == c and d.remainder[0].numerator.is_zero()


def _random_pair(rng):
    n = rng.randint(1, 3)
    variables = ("x1", "x2")[:n - 1] + ("xn",)
    g = random_poly(rng, variables, max_deg=2, max_terms=3, last_deg=2)
    p = rng.randint(1, 3)
    lead = random_poly(rng, variables[:-1] + ("xn",), max_deg=2, max_terms=2, last_deg=0)
    if rng.random() < 0.5 or lead.is_zero():
        lead = Polynomial.constant(variables, 1)
    xn = Polynomial.var(variables, "xn")
    g = lead * xn ** p + sum((c * xn ** k for k, c in enumerate(g.coefficients("xn")) if k < p),
                             Polynomial.zero(variables))
    f = random_poly(rng, variables, max_deg=3, max_terms=4, last_deg=5)
    return f, g


def check_weierstrass(f, g):
    w = prepare(g)
    d = weierstrass_divide(f, w)
    assert len(d.remainder) == w.degree
    k, q, rs = d.cleared()
    xn = Polynomial.var(f.variables, w.main_variable)
    p = w.degree
    lhs = w.guard ** k * f
    rhs = q * g + sum((r * xn ** (p - j) for j, r in enumerate(rs, start=1)), Polynomial.zero(f.variables))
    assert (lhs - rhs).is_zero()
    for r in rs:
        assert r.degree(w.main_variable) <= 0
    # minimal clearing power
    if k > 0:
        smaller = w.guard ** (k - 1)
        parts = (d.quotient,) + d.remainder
        with pytest.raises(ArithmeticError):
            for r in parts:
                (smaller * r.numerator).exact_div(r.denominator)
    # re-dividing f + h*g shifts the quotient by h and keeps the remainder
    h = xn + 1
    d2 = weierstrass_divide(f + h * g, w)
    assert [str(a) for a in d2.remainder] == [str(a) for a in d.remainder]
    q, q2 = d.quotient, d2.quotient
    assert (q2.numerator * q.denominator - (q.numerator + h * q.denominator) * q2.denominator).is_zero()


def test_weierstrass_random_suite(rng):
    for _ in range(40):
        f, g = _random_pair(rng)
        check_weierstrass(f, g)


def test_weierstrass_zero_guard_rejected():
    x1, xn = var("x1"), var("xn")
    w = prepare(x1 * xn)
    bad = type(w)(w.base, w.main_variable, w.unit, w.coefficients, Polynomial.zero(X1N))
    with pytest.raises(ValueError):
        weierstrass_divide(xn, bad)
