"""Division by a generic monic polynomial, root bounds, preparation and division.

The generic monic polynomial of degree p in the last variable x_n is

    P(t, x_n) = x_n^p + t1 x_n^(p-1) + ... + tp

with indeterminate coefficients t1..tp. :func:`generic_divide` performs long
division by P; :func:`generic_divide_via_roots` reaches the same quotient and
remainder by dividing out linear factors (x_n - v_j) one root at a time and
rewriting the symmetric results through elementary symmetric functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import elementary_to_generic, newton_symmetrize
from .poly import Polynomial, as_fraction


def _fresh_names(prefix: str, count: int, taken: Sequence[str]) -> list[str]:
    names = [f"{prefix}{j}" for j in range(1, count + 1)]
    while set(names) & set(taken):
        prefix = "_" + prefix
        names = [f"{prefix}{j}" for j in range(1, count + 1)]
    return names


def generic_polynomial(variables: Sequence[str], main: str, t_names: Sequence[str]) -> Polynomial:
    x = Polynomial.var(variables, main)
    p = len(t_names)
    out = x ** p
    for j, t in enumerate(t_names, start=1):
        out = out + Polynomial.var(variables, t) * x ** (p - j)
    return out


@dataclass(frozen=True)
class GenericDivision:
    """g = quotient * P + sum_j remainder_coeffs[j-1] * x_n^(p-j)."""

    quotient: Polynomial
    remainder_coeffs: tuple
    divisor: Polynomial
    main_variable: str
    t_names: tuple

    @property
    def p(self) -> int:
        return len(self.t_names)

    def remainder(self) -> Polynomial:
        x = Polynomial.var(self.divisor.variables, self.main_variable)
        out = Polynomial.zero(self.divisor.variables)
        for j, h in enumerate(self.remainder_coeffs, start=1):
            out = out + h * x ** (self.p - j)
        return out

    def reassemble(self) -> Polynomial:
        return self.quotient * self.divisor + self.remainder()


def _check_degree(p: int) -> None:
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"generic divisor degree must be a positive integer, got {p!r}")


def generic_divide(g: Polynomial, p: int, t_names: Sequence[str] | None = None) -> GenericDivision:
    _check_degree(p)
    if g.nvars == 0:
        raise ValueError("polynomial has no variables")
    main = g.variables[-1]
    t_names = list(t_names) if t_names else _fresh_names("t", p, g.variables)
    out_vars = g.variables + tuple(t_names)
    gg = g.with_variables(out_vars)
    divisor = generic_polynomial(out_vars, main, t_names)
    q, r = gg.divmod_monic(main, divisor)
    coeffs = r.coefficients(main)
    h = tuple(coeffs[p - j] if p - j < len(coeffs) else Polynomial.zero(out_vars)
              for j in range(1, p + 1))
    return GenericDivision(q, h, divisor, main, tuple(t_names))


def generic_divide_via_roots(g: Polynomial, p: int,
                             t_names: Sequence[str] | None = None) -> GenericDivision:
    """Same result as :func:`generic_divide`, built from root-by-root division.

    With roots v1..vp, repeatedly g_{j-1}(x) - g_{j-1}(x', v_j) = (x_n - v_j) g_j(x),
    so that g = g_p * prod(x_n - v_i) + sum_j g_{j-1}(x', v_j) prod_{i<j}(x_n - v_i).
    Quotient and remainder are symmetric in v and are rewritten in e_j(v), then
    in t_j = (-1)^j e_j.
    """
    _check_degree(p)
    main = g.variables[-1]
    t_names = list(t_names) if t_names else _fresh_names("t", p, g.variables)
    v_names = _fresh_names("v", p, list(g.variables) + t_names)
    e_names = _fresh_names("e", p, list(g.variables) + t_names + v_names)
    work_vars = g.variables + tuple(v_names)
    x = Polynomial.var(work_vars, main)
    current = g.with_variables(work_vars)
    remainder = Polynomial.zero(work_vars)
    basis = Polynomial.constant(work_vars, 1)  # prod_{i<j} (x_n - v_i)
    for v in v_names:
        vj = Polynomial.var(work_vars, v)
        value = current.compose({main: vj})
        step, rest = (current - value).divmod_monic(main, x - vj)
        if not rest.is_zero():
            raise AssertionError("root increment is not divisible by the linear factor")
        remainder = remainder + value * basis
        basis = basis * (x - vj)
        current = step
    coeffs = remainder.coefficients(main)
    out_vars = g.variables + tuple(t_names)

    def to_generic(poly: Polynomial) -> Polynomial:
        sym = newton_symmetrize(poly, v_names, e_names)
        return elementary_to_generic(sym, e_names, t_names).with_variables(out_vars)

    quotient = to_generic(current)
    h = tuple(to_generic(coeffs[p - j]) if p - j < len(coeffs) else Polynomial.zero(out_vars)
              for j in range(1, p + 1))
    divisor = generic_polynomial(out_vars, main, t_names)
    return GenericDivision(quotient, h, divisor, main, tuple(t_names))


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def upper_root(r: Fraction, k: int, rel: Fraction = Fraction(1, 2 ** 20)) -> Fraction:
    """Rational u >= r^(1/k), exact when r is a perfect k-th power, else within ``rel``."""
    r = abs(as_fraction(r))
    if k == 1 or r == 0:
        return r
    a, b = _iroot(r.numerator, k), _iroot(r.denominator, k)
    if a ** k == r.numerator and b ** k == r.denominator:
        return Fraction(a, b)
    lo, hi = Fraction(0), max(Fraction(1), r)
    while hi - lo > hi * rel:
        mid = (lo + hi) / 2
        if mid ** k >= r:
            hi = mid
        else:
            lo = mid
    return hi


def root_bound(v: Sequence) -> Fraction:
    """Upper bound 2 * max_j |v_j|^(1/j) for the roots of x^p + sum v_j x^(p-j)."""
    best = Fraction(0)
    for j, c in enumerate(v, start=1):
        u = upper_root(as_fraction(c), j)
        if u > best:
            best = u
    return 2 * best


def _is_bare(text: str) -> bool:
    return all(ch.isalnum() or ch in "_^" for ch in text)


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial.constant(p.variables, 1))

    def reduced(self, guard: Polynomial | None = None) -> "RationalFunction":
        num, den = self.numerator, self.denominator
        if den.is_constant():
            return RationalFunction(num.scale(1 / den.constant_value()),
                                    Polynomial.constant(num.variables, 1))
        if num.is_zero():
            return RationalFunction(num, Polynomial.constant(num.variables, 1))
        if guard is not None and not guard.is_constant():
            while not den.is_constant() and guard.divides_exactly(den):
                try:
                    nq = num.exact_div(guard)
                except ArithmeticError:
                    break
                num, den = nq, den.exact_div(guard)
        if den.is_constant():
            return RationalFunction(num.scale(1 / den.constant_value()),
                                    Polynomial.constant(num.variables, 1))
        c = den.leading_term_coefficient()
        return RationalFunction(num.scale(1 / c), den.scale(1 / c))

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def evaluate(self, point: Sequence) -> Fraction:
        return self.numerator.evaluate(point) / self.denominator.evaluate(point)

    def __str__(self) -> str:
        if self.denominator == Polynomial.constant(self.denominator.variables, 1):
            return str(self.numerator)
        num, den = str(self.numerator), str(self.denominator)
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        if len(self.denominator.terms) > 1 or not _is_bare(den):
            den = f"({den})"
        return f"{num}/{den}"


@dataclass(frozen=True)
class Prepared:
    """g = unit * (x_n^p + sum r_j x_n^(p-j)) wherever guard != 0."""

    base: Polynomial
    main_variable: str
    unit: RationalFunction
    coefficients: tuple  # r_1 .. r_p as RationalFunctions
    guard: Polynomial

    @property
    def degree(self) -> int:
        return len(self.coefficients)


def prepare(g: Polynomial, main: str | None = None) -> Prepared:
    main = main or g.variables[-1]
    p = g.degree(main)
    if p <= 0:
        raise ValueError(f"{g} has degree {p} in {main}; nothing to prepare")
    coeffs = g.coefficients(main)
    delta = coeffs[-1]
    unit = RationalFunction.polynomial(delta)
    rs = tuple(RationalFunction(coeffs[p - j], delta).reduced(delta) for j in range(1, p + 1))
    return Prepared(g, main, unit, rs, delta)


@dataclass(frozen=True)
class WeierstrassDivision:
    """f = quotient * g + sum_j remainder[j-1] * x_n^(p-j) wherever the guard is nonzero."""

    quotient: RationalFunction
    remainder: tuple
    prepared: Prepared

    def cleared(self) -> tuple[int, Polynomial, tuple]:
        """Minimal k with delta^k clearing every denominator, plus the cleared parts."""
        delta = self.prepared.guard
        parts = (self.quotient,) + self.remainder
        k = 0
        while True:
            scale = delta ** k
            try:
                cleared = [(scale * r.numerator).exact_div(r.denominator) for r in parts]
            except ArithmeticError:
                k += 1
                continue
            return k, cleared[0], tuple(cleared[1:])


def weierstrass_divide(f: Polynomial, w: Prepared) -> WeierstrassDivision:
    delta = w.guard
    if delta.is_zero():
        raise ValueError("preparation guard is the zero polynomial")
    if f.variables != w.base.variables:
        raise ValueError("dividend and divisor must share variables")
    main = w.main_variable
    if main != f.variables[-1]:
        order = [v for v in f.variables if v != main] + [main]
        f2, w2 = f.with_variables(order), prepare(w.base.with_variables(order), main)
        res = weierstrass_divide(f2, w2)
        back = lambda r: RationalFunction(r.numerator.with_variables(f.variables),
                                          r.denominator.with_variables(f.variables))
        return WeierstrassDivision(back(res.quotient), tuple(back(r) for r in res.remainder), w)
    p = w.degree
    gd = generic_divide(f, p)
    variables = f.variables
    # every r_j = numerator_j / delta (unreduced) keeps a common denominator
    nums = [w.base.coefficients(main)[p - j] for j in range(1, p + 1)]
    t_pos = [gd.divisor.variables.index(t) for t in gd.t_names]
    n = len(variables)
    pow_cache: dict = {}

    def pw(poly_id, base, k):
        key = (poly_id, k)
        if key not in pow_cache:
            pow_cache[key] = base ** k
        return pow_cache[key]

    def substitute(h: Polynomial) -> tuple[Polynomial, int]:
        groups: dict = {}
        for e, c in h.terms.items():
            beta = tuple(e[i] for i in t_pos)
            groups.setdefault(beta, {})[e[:n]] = c
        top = max((sum(b) for b in groups), default=0)
        out = Polynomial.zero(variables)
        for beta, terms in groups.items():
            term = Polynomial(variables, terms)
            for j, b in enumerate(beta):
                if b:
                    term = term * pw(j, nums[j], b)
            out = out + term * pw("delta", delta, top - sum(beta))
        return out, top

    qn, qk = substitute(gd.quotient)
    quotient = RationalFunction(qn, delta ** (qk + 1)).reduced(delta)
    rem = []
    for h in gd.remainder_coeffs:
        hn, hk = substitute(h)
        rem.append(RationalFunction(hn, delta ** hk).reduced(delta))
    return WeierstrassDivision(quotient, tuple(rem), w)
