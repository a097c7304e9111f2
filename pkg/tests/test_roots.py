from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cylindre import upoly
from cylindre.poly import Polynomial
from cylindre.roots import (AlgebraicNumber, Evaluator, SamplePoint, isolate_real_roots, refine,
                            sign_at, simplest_between, square_free, stack_roots)

from conftest import to_sympy

X = ("x",)
x = Polynomial.var(X, "x")


def uni(coeffs):
    return Polynomial.from_univariate(X, 0, [Fraction(c) for c in coeffs])


def contains(a: AlgebraicNumber, value: float) -> bool:
    return float(a.lo) <= value <= float(a.hi)


def test_square_free_examples():
    assert square_free((x - 1) ** 2) == x - 1
    assert square_free(x ** 2 - 1) == x ** 2 - 1
    assert square_free(x ** 3) == x
    with pytest.raises(ValueError):
        square_free(Polynomial.zero(X))


def test_isolate_examples():
    assert isolate_real_roots(x ** 2 + 1) == []
    a, b = isolate_real_roots(x ** 2 - 2)
    assert -2 <= a.lo and a.hi <= -1 and 1 <= b.lo and b.hi <= 2
    roots = isolate_real_roots(x * (x - 1) * (x - 3))
    assert len(roots) == 3
    assert all(contains(r, v) for r, v in zip(roots, (0, 1, 3)))
    with pytest.raises(ValueError):
        isolate_real_roots(Polynomial.zero(X))


def test_refine_examples():
    (_, r) = isolate_real_roots(x ** 2 - 2)
    r = AlgebraicNumber(r.defining, Fraction(1), Fraction(2))
    s = refine(r, Fraction(1, 8))
    assert (s.lo, s.hi) == (Fraction(11, 8), Fraction(3, 2))
    assert refine(s, 1) == s
    h = AlgebraicNumber(2 * x - 1, Fraction(0), Fraction(1))
    t = refine(h, Fraction(1, 4))
    assert t.lo <= Fraction(1, 2) <= t.hi and t.hi - t.lo <= Fraction(1, 4)
    with pytest.raises(ValueError):
        refine(r, 0)


def test_sign_at_examples():
    sqrt2 = AlgebraicNumber(x ** 2 - 2, Fraction(1), Fraction(2))
    s = SamplePoint((sqrt2,))
    assert sign_at(x ** 2 - 2, s) == 0
    assert sign_at(x, s) == 1
    assert sign_at(x - 2, s) == -1
    # close rational competitor
    assert sign_at(x - Fraction(141421, 100000), s) == 1
    assert sign_at(x ** 2 - Fraction(81, 64), s) == 1


def test_sign_at_tower():
    v = ("x", "y")
    X2, Y2 = Polynomial.var(v, "x"), Polynomial.var(v, "y")
    sqrt2 = AlgebraicNumber(x ** 2 - 2, Fraction(1), Fraction(2))
    # y = 2^(1/4) defined relative to x = sqrt2
    fourth = AlgebraicNumber(Y2 ** 2 - X2, Fraction(1), Fraction(2))
    pt = (sqrt2, fourth)
    assert sign_at(Y2 ** 4 - 2, pt) == 0
    assert sign_at(Y2 ** 2 - X2, pt) == 0
    assert sign_at(Y2 - X2, pt) == -1
    assert sign_at(Y2 ** 3 - X2 * Y2, pt) == 0


def test_stack_over_algebraic_base():
    v = ("x", "y")
    X2, Y2 = Polynomial.var(v, "x"), Polynomial.var(v, "y")
    sqrt2 = AlgebraicNumber(x ** 2 - 2, Fraction(1), Fraction(2))
    ev = Evaluator((sqrt2,), v)
    roots, null = stack_roots([Y2 ** 2 - X2, Y2 ** 2 - 2, X2 ** 2 - 2 + 0 * Y2], ev)
    expected = sorted([-2 ** 0.25, 2 ** 0.25, -2 ** 0.5, 2 ** 0.5])
    for r, e in zip(roots, expected):
        lo, hi = (r.value.lo, r.value.hi) if isinstance(r.value, AlgebraicNumber) else (r.value, r.value)
        assert float(lo) <= e <= float(hi)
        assert hi - lo <= 1
    assert [sorted(r.vanishing) for r in roots] == [[1], [0], [0], [1]]
    assert null == frozenset({2})


def test_simplest_between():
    assert simplest_between(Fraction(-1), Fraction(1)) == 0
    assert simplest_between(Fraction(1), Fraction(3)) == 2
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(-5, 2), Fraction(-2)) == Fraction(-7, 3)
    with pytest.raises(ValueError):
        simplest_between(Fraction(1), Fraction(1))


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=30),
       st.fractions(min_value=-50, max_value=50, max_denominator=30))
def test_simplest_between_is_inside(a, b):
    if a == b:
        return
    a, b = min(a, b), max(a, b)
    c = simplest_between(a, b)
    assert a < c < b
    # no smaller denominator fits
    for q in range(1, c.denominator):
        lo = int(a * q) - 1
        assert not any(a < Fraction(k, q) < b for k in range(lo, lo + int((b - a) * q) + 3))


# -- properties -------------------------------------------------------------------

def test_isolation_soundness(rng):
    for _ in range(100):
        rts = set()
        while len(rts) < rng.randint(1, 4):
            rts.add(Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
        f = Polynomial.constant(X, 1)
        for r in rts:
            f = f * (x - r)
        # irreducible quadratic without real roots
        f = f * (x ** 2 + rng.randint(1, 9))
        roots = isolate_real_roots(f)
        assert len(roots) == len(rts)
        for a, r in zip(roots, sorted(rts)):
            assert a.lo <= r <= a.hi
        for a, b in zip(roots, roots[1:]):
            assert a.hi < b.lo


def test_isolation_against_sympy(rng):
    for _ in range(40):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(2, 8))] + [rng.randint(1, 5)]
        f = uni(coeffs)
        expr, (s,) = to_sympy(f)
        real = sorted(set(sympy.Poly(expr, s).real_roots()), key=float)
        got = isolate_real_roots(f)
        assert len(got) == len(real)
        for a, r in zip(got, real):
            if a.is_rational:
                assert sympy.Rational(a.lo.numerator, a.lo.denominator) == r
            else:
                assert a.lo < r < a.hi


def test_sturm_certificate(rng):
    for _ in range(100):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(2, 9))]
        coeffs[-1] = coeffs[-1] or Fraction(1)
        dense = upoly.square_free(upoly.strip(coeffs))
        if upoly.degree(dense) < 1:
            continue
        f = uni(dense)
        roots = isolate_real_roots(f)
        seq = upoly.sturm_sequence(dense)
        b = upoly.cauchy_like_bound(dense) + 1
        assert len(roots) == upoly.count_roots(seq, -b, b)
        for a in roots:
            if not a.is_rational:
                assert upoly.count_roots(seq, a.lo, a.hi) == 1


def test_sign_at_multiplicative(rng):
    v = ("x", "y")
    X2, Y2 = Polynomial.var(v, "x"), Polynomial.var(v, "y")
    sqrt3 = AlgebraicNumber(x ** 2 - 3, Fraction(1), Fraction(2))
    cube = AlgebraicNumber(Y2 ** 3 - X2 - 1, Fraction(1), Fraction(2))
    pt = (sqrt3, cube)
    for _ in range(40):
        p = sum((rng.randint(-3, 3) * X2 ** rng.randint(0, 2) * Y2 ** rng.randint(0, 3) for _ in range(3)),
                Polynomial.zero(v))
        q = sum((rng.randint(-3, 3) * X2 ** rng.randint(0, 2) * Y2 ** rng.randint(0, 3) for _ in range(3)),
                Polynomial.zero(v))
        sp, sq = sign_at(p, pt), sign_at(q, pt)
        assert sign_at(p * q, pt) == sp * sq
        assert sign_at(p * p, pt) >= 0
        value = float(p.evaluate([Fraction(3 ** 0.5), Fraction((3 ** 0.5 + 1) ** (1 / 3))]))
        if abs(value) > 1e-6:
            assert sp == (1 if value > 0 else -1)


def test_refinement_keeps_root(rng):
    for _ in range(50):
        f = uni([rng.randint(-9, 9) for _ in range(rng.randint(2, 7))] + [1])
        for a in isolate_real_roots(f):
            r = refine(a, Fraction(1, 10 ** 6))
            assert r.hi - r.lo <= Fraction(1, 10 ** 6)
            if r.is_rational:
                assert r.defining.evaluate([r.lo]) == 0
            else:
                assert a.lo <= r.lo and r.hi <= a.hi
                assert r.defining.evaluate([r.lo]) * r.defining.evaluate([r.hi]) < 0
