"""Multivariate gcds, square-free factor splitting, subresultants and projection.

Variables are addressed by position. A polynomial's main variable is its last
occurring one (``p.level() - 1``). All gcds are over Q and normalized to
integer coefficients with content 1 and a positive leading term.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .poly import Polynomial


def normal(p: Polynomial) -> Polynomial:
    return p.primitive()


def _one(p: Polynomial) -> Polynomial:
    return Polynomial.constant(p.variables, 1)


def main_index(p: Polynomial) -> int:
    return p.level() - 1


def content(p: Polynomial, k: int) -> Polynomial:
    """gcd of the coefficients of ``p`` in variable k (a polynomial free of x_k)."""
    out = None
    for c in p.coefficients(k):
        if c.is_zero():
            continue
        out = normal(c) if out is None else gcd(out, c)
        if out.is_constant():
            return _one(p)
    return out if out is not None else Polynomial.zero(p.variables)


def primitive_part(p: Polynomial, k: int) -> Polynomial:
    if p.is_zero():
        return p
    return normal(p.exact_div(content(p, k)))


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor over Q by recursive primitive remainder sequences."""
    if a.is_zero():
        return normal(b)
    if b.is_zero():
        return normal(a)
    if a.is_constant() or b.is_constant():
        return _one(a)
    k = max(a.level(), b.level()) - 1
    if not a.depends_on(k):
        return gcd(a, content(b, k))
    if not b.depends_on(k):
        return gcd(content(a, k), b)
    ca, cb = content(a, k), content(b, k)
    c = gcd(ca, cb)
    pa, pb = normal(a.exact_div(ca)), normal(b.exact_div(cb))
    if pa.degree(k) < pb.degree(k):
        pa, pb = pb, pa
    while True:
        r = pa.prem(pb, k)
        if r.is_zero():
            g = pb
            break
        if not r.depends_on(k):
            g = _one(a)
            break
        pa, pb = pb, primitive_part(r, k)
    return normal(c * primitive_part(g, k))


def square_free_factors(p: Polynomial) -> tuple[Fraction, list[tuple[Polynomial, int]]]:
    """p = kappa * prod f**e with each f normal, square-free and primitive in its main variable.

    Contents are split off recursively, so factors can live at lower levels.
    Factors are not necessarily irreducible or pairwise coprime.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    factors: dict[Polynomial, int] = {}
    _split_into(normal(p), 1, factors)
    prod = _one(p)
    for f, e in factors.items():
        prod = prod * f ** e
    kappa = p.leading_term_coefficient() / prod.leading_term_coefficient()
    ordered = sorted(factors.items(), key=lambda fe: (fe[0].level(), str(fe[0])))
    return kappa, ordered


def _split_into(p: Polynomial, mult: int, acc: dict) -> None:
    if p.is_constant():
        return
    k = main_index(p)
    c = content(p, k)
    if not c.is_constant():
        _split_into(c, mult, acc)
        p = normal(p.exact_div(c))
    # Yun's square-free decomposition in x_k; b and c share every exact divisor
    d = p.derivative(k)
    a = gcd(p, d)
    b = p.exact_div(a)
    c = d.exact_div(a)
    dd = c - b.derivative(k)
    i = 1
    while not b.is_constant():
        a = gcd(b, dd)
        if not a.is_constant():
            acc[a] = acc.get(a, 0) + i * mult
        b = b.exact_div(a)
        c = dd.exact_div(a)
        dd = c - b.derivative(k)
        i += 1


def split_factors(p: Polynomial) -> list[Polynomial]:
    return [f for f, _ in square_free_factors(p)[1]]


# -- subresultants --------------------------------------------------------

def _bareiss(m: list[list[Polynomial]], variables) -> Polynomial:
    n = len(m)
    if n == 0:
        return Polynomial.constant(variables, 1)
    m = [row[:] for row in m]
    sign = 1
    prev = Polynomial.constant(variables, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(variables)
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]).exact_div(prev)
        prev = piv
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


def psc(f: Polynomial, g: Polynomial, k: int, j: int) -> Polynomial:
    """j-th principal subresultant coefficient of f and g in variable k."""
    m, n = f.degree(k), g.degree(k)
    if not 0 <= j <= min(m, n):
        raise ValueError(f"psc index {j} out of range for degrees {m}, {n}")
    fc = f.coefficients(k)[::-1]  # highest degree first
    gc = g.coefficients(k)[::-1]
    width = m + n - j
    size = m + n - 2 * j
    zero = Polynomial.zero(f.variables)
    rows = []
    for s in range(n - j):
        row = [zero] * s + list(fc) + [zero] * (width - s - m - 1)
        rows.append(row[:size])
    for s in range(m - j):
        row = [zero] * s + list(gc) + [zero] * (width - s - n - 1)
        rows.append(row[:size])
    return _bareiss(rows, f.variables)


def resultant(f: Polynomial, g: Polynomial, k: int) -> Polynomial:
    return psc(f, g, k, 0)


def discriminant(f: Polynomial, k: int) -> Polynomial:
    """Resultant of f and its derivative in x_k, up to a constant factor."""
    return psc(f, f.derivative(k), k, 0)


def psc_set(f: Polynomial, g: Polynomial, k: int) -> list[Polynomial]:
    """psc_0, psc_1, ... of f and g, stopping after the first nonzero constant."""
    out = []
    for j in range(min(f.degree(k), g.degree(k))):
        p = psc(f, g, k, j)
        if p.is_zero():
            continue
        if p.is_constant():
            break
        out.append(p)
    return out


def reducta(f: Polynomial, k: int) -> list[Polynomial]:
    """f, red(f), red(red(f)), ... down to the last nonzero reductum.

    Stops after the first reductum whose leading coefficient is a nonzero
    constant. A reductum free of x_k is its own leading coefficient, so it
    still contributes to the projection.
    """
    out = []
    while not f.is_zero():
        out.append(f)
        if f.leading_coefficient(k).is_constant():
            break
        f = f.reductum(k)
    return out


def project(polys: Sequence[Polynomial], k: int | None = None) -> list[Polynomial]:
    """Collins-Hong projection of level-(k+1) polynomials onto the first k variables.

    Returns normalized, square-free, deduplicated nonconstant factors; they
    may live at any level up to k.
    """
    polys = [p for p in polys if not p.is_zero()]
    if k is None:
        levels = {p.level() for p in polys}
        if len(levels) > 1:
            raise ValueError("projection input must share one main variable")
        k = levels.pop() - 1 if levels else 1
    if k < 1:
        raise ValueError("projection needs at least two variables")
    raw: list[Polynomial] = []
    for f in polys:
        for r in reducta(f, k):
            raw.append(r.leading_coefficient(k))
            raw.extend(psc_set(r, r.derivative(k), k))
    for f, g in combinations(polys, 2):
        for r in reducta(f, k):
            raw.extend(psc_set(r, g, k))
    return dedupe_factors(raw)


def dedupe_factors(polys: Iterable[Polynomial]) -> list[Polynomial]:
    seen: dict[Polynomial, None] = {}
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        for f in split_factors(p):
            seen.setdefault(f, None)
    return sorted(seen, key=lambda f: (f.level(), f.total_degree(), str(f)))
