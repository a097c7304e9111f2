"""Symmetric functions, initial forms and regularizing shears."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .poly import Polynomial, as_fraction


@dataclass(frozen=True)
class UnivariateView:
    """A polynomial seen as univariate in ``main_variable``.

    ``coefficients[j]`` is the coefficient of ``main_variable**j``; it is a
    polynomial over the same variable tuple not involving the main variable.
    """

    base: Polynomial
    main_variable: str
    coefficients: tuple

    @classmethod
    def of(cls, p: Polynomial, var: str) -> "UnivariateView":
        if p.is_zero():
            raise ValueError("the zero polynomial has no leading coefficient")
        return cls(p, var, tuple(p.coefficients(var)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Polynomial:
        return self.coefficients[-1]

    def reassemble(self) -> Polynomial:
        x = Polynomial.var(self.base.variables, self.main_variable)
        out = Polynomial.zero(self.base.variables)
        for c in reversed(self.coefficients):
            out = out * x + c
        return out


def derivative(p: Polynomial, var: str) -> Polynomial:
    return p.derivative(var)


def initial_form(f: Polynomial) -> tuple[int, Polynomial]:
    """Order (lowest total degree present) and the homogeneous part of that degree."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no initial form")
    order = min(sum(e) for e in f.terms)
    return order, f.homogeneous_part(order)


@dataclass(frozen=True)
class Shear:
    """x -> (x1 + nu1*xn, ..., x_{n-1} + nu_{n-1}*xn, xn)."""

    nu: tuple

    def inverse(self) -> "Shear":
        return Shear(tuple(-v for v in self.nu))

    def __call__(self, g: Polynomial) -> Polynomial:
        return apply_shear(g, self)


def _integer_order(v: int):
    if v == 0:
        return (0, 0)
    return (1, v) if v > 0 else (2, -v)


def shear_candidates(length: int) -> Iterator[tuple]:
    """Integer vectors by max-norm, then lexicographically with 0 < 1 < 2 < .. < -1 < -2 < .."""
    if length == 0:
        yield ()
        return
    m = 0
    while True:
        values = sorted(range(-m, m + 1), key=_integer_order)
        for vec in itertools.product(values, repeat=length):
            if max(abs(v) for v in vec) == m:
                yield vec
        m += 1


def find_shear(gs: Sequence[Polynomial]) -> Shear:
    if not gs:
        raise ValueError("find_shear needs at least one polynomial")
    variables = gs[0].variables
    if any(g.variables != variables for g in gs):
        raise ValueError("all polynomials must share one variable list")
    if any(g.is_zero() for g in gs):
        raise ValueError("find_shear requires nonzero polynomials")
    product = Polynomial.constant(variables, 1)
    for g in gs:
        product = product * initial_form(g)[1]
    for nu in shear_candidates(len(variables) - 1):
        if product.evaluate(list(nu) + [1]):
            return Shear(tuple(nu))
    raise AssertionError("unreachable: a nonzero form has a non-root on (nu, 1)")


def apply_shear(g: Polynomial, s: Shear) -> Polynomial:
    n = g.nvars
    if len(s.nu) != n - 1:
        raise ValueError(f"shear of length {len(s.nu)} for {n} variables")
    if not any(s.nu):
        return g
    last = Polynomial.var(g.variables, g.variables[-1])
    mapping = {}
    for i, nu in enumerate(s.nu):
        mapping[g.variables[i]] = Polynomial.var(g.variables, g.variables[i]) + last * nu
    return g.compose(mapping)


def sigma_embed(v: Sequence) -> list[Fraction]:
    """Coefficients w with x^p + sum w_j x^(p-j) = prod (x - v_i)."""
    coeffs = [Fraction(1)]  # highest degree first
    for r in v:
        r = as_fraction(r)
        nxt = coeffs + [Fraction(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= r * coeffs[i - 1]
        coeffs = nxt
    return coeffs[1:]


def elementary_symmetric(variables: Sequence[str], among: Sequence[str], j: int) -> Polynomial:
    """e_j of the variables ``among`` as a polynomial over ``variables``."""
    idx = [variables.index(v) for v in among]
    n = len(variables)
    terms = {}
    for combo in itertools.combinations(idx, j):
        exp = [0] * n
        for i in combo:
            exp[i] = 1
        terms[tuple(exp)] = 1
    return Polynomial(variables, terms)


def is_symmetric(f: Polynomial, among: Sequence[str]) -> bool:
    idx = [f.index(v) for v in among]
    for a, b in zip(idx, idx[1:]):
        swapped = {}
        for e, c in f.terms.items():
            e2 = list(e)
            e2[a], e2[b] = e2[b], e2[a]
            swapped[tuple(e2)] = c
        if swapped != f.terms:
            return False
    return True


def newton_symmetrize(f: Polynomial, among: Sequence[str],
                      names: Sequence[str] | None = None) -> Polynomial:
    """Rewrite a polynomial symmetric in ``among`` through elementary symmetric functions.

    The result lives over the remaining variables followed by ``names``
    (default e1..ep) and satisfies G(e1(v), ..., ep(v)) = f(v).
    """
    among = list(among)
    p = len(among)
    names = list(names) if names is not None else [f"e{j}" for j in range(1, p + 1)]
    if len(names) != p:
        raise ValueError("need one name per symmetric variable")
    if not is_symmetric(f, among):
        raise ValueError("polynomial is not symmetric in " + ", ".join(among))
    sym_idx = [f.index(v) for v in among]
    others = [v for v in f.variables if v not in among]
    clash = set(names) & set(others)
    if clash:
        raise ValueError(f"names {sorted(clash)} clash with existing variables")
    out_vars = tuple(others) + tuple(names)
    elem = [elementary_symmetric(f.variables, among, j) for j in range(1, p + 1)]
    powers: dict = {}

    def epow(j: int, k: int) -> Polynomial:
        if (j, k) not in powers:
            powers[(j, k)] = elem[j] ** k
        return powers[(j, k)]

    rest = dict(f.terms)
    result = Polynomial.zero(out_vars)
    n_out = len(out_vars)
    other_pos = [(f.index(v), i) for i, v in enumerate(others)]
    while rest:
        lead = max(tuple(e[i] for i in sym_idx) for e in rest)
        # all terms carrying the leading symmetric exponent, as a coefficient polynomial
        coeff_terms = {}
        for e, c in rest.items():
            if tuple(e[i] for i in sym_idx) == lead:
                e2 = list(e)
                for i in sym_idx:
                    e2[i] = 0
                coeff_terms[tuple(e2)] = c
        coeff = Polynomial(f.variables, coeff_terms)
        diffs = [lead[j] - (lead[j + 1] if j + 1 < p else 0) for j in range(p)]
        if any(d < 0 for d in diffs):
            raise AssertionError("leading exponent of a symmetric polynomial must be a partition")
        prod = Polynomial.constant(f.variables, 1)
        for j, d in enumerate(diffs):
            if d:
                prod = prod * epow(j, d)
        sub = coeff * prod
        for e, c in sub.terms.items():
            s = rest.get(e, 0) - c
            if s:
                rest[e] = s
            else:
                rest.pop(e, None)
        out_terms = {}
        for e, c in coeff.terms.items():
            e2 = [0] * n_out
            for src, dst in other_pos:
                e2[dst] = e[src]
            for j, d in enumerate(diffs):
                e2[len(others) + j] = d
            out_terms[tuple(e2)] = c
        result = result + Polynomial(out_vars, out_terms)
    return result


def elementary_to_generic(g: Polynomial, e_names: Sequence[str], t_names: Sequence[str]) -> Polynomial:
    """Substitute e_j = (-1)^j t_j, renaming the e variables to t variables."""
    out_vars = tuple(t_names[e_names.index(v)] if v in e_names else v for v in g.variables)
    renamed = Polynomial(out_vars, g.terms)
    pos = [out_vars.index(t) for t in t_names]
    terms = {}
    for e, c in renamed.terms.items():
        flips = sum(e[i] * (j + 1) for j, i in enumerate(pos))
        terms[e] = -c if flips % 2 else c
    return Polynomial(out_vars, terms)


def single_equation(fs: Sequence[Polynomial]) -> Polynomial:
    """Sum of squares: its real zero set is the common real zero set of ``fs``."""
    if not fs:
        raise ValueError("need at least one polynomial")
    out = Polynomial.zero(fs[0].variables)
    for f in fs:
        out = out + f * f
    return out
