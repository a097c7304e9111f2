"""Real root isolation and exact sign decisions at algebraic points.

Coordinates of a sample point are either rationals or :class:`AlgebraicNumber`
values. The k-th coordinate of a point (0-based) is defined by a polynomial in
the first k+1 variables whose last occurring variable is the k-th one: for
k = 0 this is an ordinary univariate polynomial over Q, for larger k the
polynomial is read with the earlier coordinates substituted (a triangular
representation). Variables are matched by position, not by name.

Exact zero tests use gcds over the field generated by the earlier coordinates,
computed with pseudo-remainder sequences whose leading coefficients are
themselves sign-tested recursively. Nonzero signs are settled by rational
interval evaluation with bisection refinement, which terminates because the
value is known to be nonzero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import upoly
from .division import root_bound
from .poly import Polynomial, as_fraction


@dataclass(frozen=True)
class AlgebraicNumber:
    """The unique root of ``defining`` in the open interval (lo, hi), or lo if lo == hi."""

    defining: Polynomial
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def level(self) -> int:
        return self.defining.level()

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.lo)
        return f"root of {self.defining} in ({self.lo}, {self.hi})"


Coordinate = Union[Fraction, AlgebraicNumber]


@dataclass(frozen=True)
class SamplePoint:
    coords: tuple

    def __len__(self) -> int:
        return len(self.coords)

    def extend(self, c: Coordinate) -> "SamplePoint":
        return SamplePoint(self.coords + (c,))

    def approx(self) -> tuple:
        return tuple(float(c) if isinstance(c, Fraction) else c.approx() for c in self.coords)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coords)


def exact_value(c: Coordinate) -> Fraction | None:
    if isinstance(c, AlgebraicNumber):
        return c.lo if c.is_rational else None
    return as_fraction(c)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def embed(p: Polynomial, variables: Sequence[str]) -> Polynomial:
    """Positional re-embedding of ``p`` into another variable tuple."""
    variables = tuple(variables)
    if p.variables == variables:
        return p
    n = len(variables)
    terms = {}
    for e, c in p.terms.items():
        if any(e[n:]):
            raise ValueError(f"{p} uses more variables than {variables}")
        e2 = tuple(e[:n]) + (0,) * max(0, n - len(e))
        terms[e2] = c
    return Polynomial(variables, terms)


# -- univariate API -----------------------------------------------------

def _univariate_index(f: Polynomial) -> int:
    used = [i for i in range(f.nvars) if f.depends_on(i)]
    if len(used) > 1:
        raise ValueError(f"{f} is not univariate")
    return used[0] if used else max(f.nvars - 1, 0)


def to_dense(f: Polynomial, index: int | None = None) -> list:
    index = _univariate_index(f) if index is None else index
    d = f.degree(index)
    out = [Fraction(0)] * (d + 1)
    for e, c in f.terms.items():
        out[e[index]] += c
    return upoly.strip(out)


def from_dense(coeffs, variables: Sequence[str], index: int) -> Polynomial:
    return Polynomial.from_univariate(variables, index, coeffs)


def square_free(f: Polynomial) -> Polynomial:
    if f.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    i = _univariate_index(f)
    return from_dense(upoly.primitive(upoly.square_free(to_dense(f, i))), f.variables, i)


def isolate_real_roots(f: Polynomial) -> list[AlgebraicNumber]:
    """Distinct real roots of a univariate polynomial, ascending, certified by Sturm counts.

    Isolating intervals are refined to width at most 1.
    """
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    i = _univariate_index(f)
    dense = upoly.square_free(to_dense(f, i))
    defining = from_dense(upoly.primitive(dense), f.variables, i)
    out = []
    for r in upoly.isolate(dense):
        if not isinstance(r, Fraction) and r[1] - r[0] > 1:
            r = upoly.refine(dense, r[0], r[1], Fraction(1))
        if isinstance(r, Fraction):
            out.append(AlgebraicNumber(defining, r, r))
        else:
            out.append(AlgebraicNumber(defining, r[0], r[1]))
    return out


def refine(a: AlgebraicNumber, width) -> AlgebraicNumber:
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if a.is_rational or a.hi - a.lo <= width:
        return a
    if a.level > 1:
        raise ValueError("refining a relative algebraic number needs its base point; use Evaluator")
    dense = to_dense(a.defining, 0 if a.defining.nvars else None)
    r = upoly.refine(dense, a.lo, a.hi, width)
    if isinstance(r, Fraction):
        return AlgebraicNumber(a.defining, r, r)
    return AlgebraicNumber(a.defining, r[0], r[1])


def sign_at(p: Polynomial, point) -> int:
    coords = point.coords if isinstance(point, SamplePoint) else tuple(point)
    return Evaluator(coords, p.variables).sign(p)


# -- interval helpers ---------------------------------------------------

def _ipow(lo: Fraction, hi: Fraction, k: int):
    if k == 0:
        return Fraction(1), Fraction(1)
    a, b = lo ** k, hi ** k
    if k % 2 == 0 and lo < 0 < hi:
        return Fraction(0), max(a, b)
    return (a, b) if a <= b else (b, a)


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p), max(p)


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """Rational with smallest denominator (then smallest magnitude) in the open interval (a, b)."""
    if not a < b:
        raise ValueError("empty interval")
    if a < 0 < b:
        return Fraction(0)
    if b <= 0:
        return -simplest_between(-b, -a)
    fl = math.floor(a)
    if fl + 1 < b:
        return Fraction(fl + 1)
    # fl <= a < b <= fl + 1
    if a == fl:
        return fl + Fraction(1, math.floor(1 / (b - fl)) + 1)
    return fl + 1 / simplest_between(1 / (b - fl), 1 / (a - fl))


# -- the evaluator ------------------------------------------------------

class Evaluator:
    """Exact sign oracle at a fixed point with rational/algebraic coordinates.

    Keeps refined isolating intervals between calls, so reuse one evaluator for
    many sign questions about the same point.
    """

    def __init__(self, coords: Sequence[Coordinate], variables: Sequence[str]):
        self.variables = tuple(variables)
        if len(coords) > len(self.variables):
            raise ValueError("more coordinates than variables")
        self.coords = list(coords)
        self.rational: dict[int, Fraction] = {}
        self.lo: list = []
        self.hi: list = []
        self.defining: dict[int, Polynomial] = {}
        self._slo: dict[int, int] = {}
        for k, c in enumerate(self.coords):
            v = exact_value(c)
            if v is not None:
                self.rational[k] = v
                self.lo.append(v)
                self.hi.append(v)
            else:
                d = embed(c.defining, self.variables)
                if d.level() != k + 1:
                    raise ValueError(
                        f"coordinate {k} is defined by {c.defining}, whose main variable is not position {k}")
                self.defining[k] = d
                self.lo.append(c.lo)
                self.hi.append(c.hi)

    # -- bookkeeping
    def coordinate(self, k: int) -> Coordinate:
        if k in self.rational:
            return self.rational[k]
        return AlgebraicNumber(self.coords[k].defining, self.lo[k], self.hi[k])

    def point(self) -> SamplePoint:
        return SamplePoint(tuple(self.coordinate(k) for k in range(len(self.coords))))

    def push(self, c: Coordinate) -> None:
        """Append a coordinate (used while lifting)."""
        k = len(self.coords)
        if k >= len(self.variables):
            raise ValueError("point already has full dimension")
        self.coords.append(c)
        v = exact_value(c)
        if v is not None:
            self.rational[k] = v
            self.lo.append(v)
            self.hi.append(v)
        else:
            d = embed(c.defining, self.variables)
            if d.level() != k + 1:
                raise ValueError(f"coordinate {k} has a misplaced defining polynomial")
            self.defining[k] = d
            self.lo.append(c.lo)
            self.hi.append(c.hi)

    def pop(self) -> None:
        k = len(self.coords) - 1
        self.coords.pop()
        self.lo.pop()
        self.hi.pop()
        self.rational.pop(k, None)
        self.defining.pop(k, None)
        self._slo.pop(k, None)

    # -- reduction
    def reduce(self, p: Polynomial, below: int | None = None) -> Polynomial:
        """Substitute rational coordinates and reduce modulo defining polynomials.

        With ``below`` only coordinates at positions < below are used, so that
        polynomials in variable ``below`` keep their meaning.
        """
        p = embed(p, self.variables)
        top = len(self.variables) if below is None else below
        if self.rational:
            p = p.substitute({k: v for k, v in self.rational.items() if k < top})
        for k in sorted(self.defining, reverse=True):
            if k in self.rational or k >= top:
                continue
            d = self.defining[k]
            if p.degree(k) >= d.degree(k) and d.leading_coefficient(k).is_constant():
                if self.rational:
                    d = d.substitute({j: v for j, v in self.rational.items() if j < k})
                p = p.divmod_monic(k, d)[1]
        return p

    @staticmethod
    def _normalize(p: Polynomial) -> Polynomial:
        c = p.numeric_content()
        return p.scale(1 / c) if c else p

    # -- intervals
    def interval(self, p: Polynomial) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for e, c in p.terms.items():
            t = (c, c)
            for k, m in enumerate(e):
                if m:
                    if k >= len(self.coords):
                        raise ValueError(f"{p} involves a variable beyond the point")
                    t = _imul(t, _ipow(self.lo[k], self.hi[k], m))
            lo += t[0]
            hi += t[1]
        return lo, hi

    def refine(self, k: int) -> None:
        if k in self.rational:
            return
        d = self.reduce_defining(k)
        if k not in self._slo:
            self._slo[k] = self.sign(d.substitute({k: self.lo[k]}))
            if self._slo[k] == 0:
                raise AssertionError("isolating interval endpoint is a root")
        mid = (self.lo[k] + self.hi[k]) / 2
        s = self.sign(d.substitute({k: mid}))
        if s == 0:
            self.rational[k] = mid
            self.lo[k] = self.hi[k] = mid
        elif s == self._slo[k]:
            self.lo[k] = mid
        else:
            self.hi[k] = mid

    def reduce_defining(self, k: int) -> Polynomial:
        d = self.defining[k]
        below = {j: v for j, v in self.rational.items() if j < k}
        return d.substitute(below) if below else d

    def refine_to(self, k: int, width: Fraction) -> None:
        while k not in self.rational and self.hi[k] - self.lo[k] > width:
            self.refine(k)

    # -- signs
    def sign(self, p: Polynomial) -> int:
        p = self.reduce(p)
        if p.is_constant():
            return _sgn(p.constant_value())
        k = p.level() - 1
        if k >= len(self.coords):
            raise ValueError(f"{p} involves variables beyond the {len(self.coords)}-dimensional point")
        lo, hi = self.interval(p)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if self.vanishes(p, k):
            return 0
        while True:
            for j in range(k + 1):
                if j not in self.rational:
                    self.refine(j)
            p = self.reduce(p)
            if p.is_constant():
                return _sgn(p.constant_value())
            lo, hi = self.interval(p)
            if lo > 0:
                return 1
            if hi < 0:
                return -1

    def trim(self, h: Polynomial, k: int) -> Polynomial:
        """Drop leading coefficients in variable k that vanish at the point."""
        h = self.reduce(h, k)
        while not h.is_zero():
            lc = h.leading_coefficient(k)
            if h.degree(k) == 0:
                return h if self.sign(lc) else Polynomial.zero(h.variables)
            if self.sign(lc):
                return h
            h = h.reductum(k)
        return h

    def degree_at(self, h: Polynomial, k: int) -> int:
        return self.trim(h, k).degree(k)

    def gcd(self, a: Polynomial, b: Polynomial, k: int) -> Polynomial:
        """A gcd in variable k over the field of the first k coordinates (up to a nonzero factor)."""
        a, b = self.trim(a, k), self.trim(b, k)
        if a.degree(k) < b.degree(k):
            a, b = b, a
        while not b.is_zero():
            if b.degree(k) == 0:
                return Polynomial.constant(a.variables, 1)
            r = self.trim(self._normalize(self.reduce(a.prem(b, k), k)), k)
            a, b = b, r
        return a

    def square_free(self, h: Polynomial, k: int) -> Polynomial:
        h = self.trim(h, k)
        if h.degree(k) <= 1:
            return h
        g = self.gcd(h, h.derivative(k), k)
        if g.degree(k) <= 0:
            return h
        q, _ = h.pdivmod(g, k)
        return self.trim(self._normalize(self.reduce(q, k)), k)

    def sturm(self, h: Polynomial, k: int) -> list[Polynomial]:
        s0 = self.trim(h, k)
        if s0.degree(k) <= 0:
            return [s0]
        seq = [s0, self.trim(s0.derivative(k), k)]
        while seq[-1].degree(k) > 0:
            a, b = seq[-2], seq[-1]
            delta = a.degree(k) - b.degree(k) + 1
            r = a.prem(b, k)
            if delta % 2 and self.sign(b.leading_coefficient(k)) < 0:
                r = -r
            r = self.trim(self._normalize(self.reduce(-r, k)), k)
            if r.is_zero():
                break
            seq.append(r)
        return seq

    def _variations(self, seq: list[Polynomial], k: int, x: Fraction) -> int:
        return upoly.variations(self.sign(s.substitute({k: x})) for s in seq)

    def count_roots(self, seq: list[Polynomial], k: int, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b] of the first polynomial of a Sturm sequence; a not a root."""
        return self._variations(seq, k, a) - self._variations(seq, k, b)

    def vanishes(self, p: Polynomial, k: int) -> bool:
        """Does p (top variable k, coordinate k algebraic) vanish at the point?"""
        d = self.reduce_defining(k)
        g = self.gcd(d, p, k)
        if g.degree(k) <= 0:
            return False
        if k in self.rational:
            return self.sign(g.substitute({k: self.rational[k]})) == 0
        seq = self.sturm(g, k)
        return self.count_roots(seq, k, self.lo[k], self.hi[k]) > 0

    def root_bound(self, h: Polynomial, k: int) -> Fraction:
        """Power of two strictly above every root modulus of h(point, x_k)."""
        h = self.trim(h, k)
        d = h.degree(k)
        coeffs = h.coefficients(k)
        lc = coeffs[-1]
        while True:
            lo, hi = self.interval(lc)
            if lo > 0 or hi < 0:
                break
            for j in range(k):
                self.refine(j)
            lc = self.reduce(lc)
        lc_min = min(abs(lo), abs(hi))
        ratios = []
        for j in range(1, d + 1):
            clo, chi = self.interval(coeffs[d - j])
            ratios.append(max(abs(clo), abs(chi)) / lc_min)
        b = root_bound(ratios)
        p = Fraction(1)
        while p <= b:
            p *= 2
        return p

    def isolate(self, h: Polynomial, k: int) -> list:
        """Roots of h(point, x_k): ascending Fractions and (lo, hi) pairs as in upoly.isolate."""
        h = self.trim(h, k)
        if h.degree(k) <= 0:
            return []
        if all(j in self.rational for j in range(k)):
            return upoly.isolate(to_dense(self.reduce(h), k))
        seq = self.sturm(h, k)
        bound = self.root_bound(h, k)

        def is_root(x):
            return self.sign(h.substitute({k: x})) == 0

        out = []
        stack = [(-bound, bound, self.count_roots(seq, k, -bound, bound))]
        while stack:
            lo, hi, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            if is_root(mid):
                out.append(mid)
                eps = (hi - lo) / 4
                while is_root(mid - eps) or is_root(mid + eps) \
                        or self.count_roots(seq, k, mid - eps, mid + eps) != 1:
                    eps /= 2
                stack.append((lo, mid - eps, self.count_roots(seq, k, lo, mid - eps)))
                stack.append((mid + eps, hi, self.count_roots(seq, k, mid + eps, hi)))
                continue
            stack.append((lo, mid, self.count_roots(seq, k, lo, mid)))
            stack.append((mid, hi, self.count_roots(seq, k, mid, hi)))
        out.sort(key=lambda r: r if isinstance(r, Fraction) else r[0])
        return out


# -- stacks ---------------------------------------------------------------

@dataclass
class _Root:
    lo: Fraction
    hi: Fraction
    defining: Polynomial  # square-free at the base point, top variable k
    polys: set
    slo: int = 0

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class StackRoot:
    """One distinct root over a base point, with the family members vanishing there."""

    value: Coordinate
    vanishing: frozenset


def _refine_root(ev: Evaluator, r: _Root, k: int) -> None:
    if r.exact:
        return
    mid = (r.lo + r.hi) / 2
    s = ev.sign(r.defining.substitute({k: mid}))
    if s == 0:
        r.lo = r.hi = mid
    elif s == r.slo:
        r.lo = mid
    else:
        r.hi = mid


def _vanishes_at_root(ev: Evaluator, p: Polynomial, r: _Root, k: int) -> bool:
    if r.exact:
        return ev.sign(p.substitute({k: r.lo})) == 0
    ev.push(AlgebraicNumber(r.defining, r.lo, r.hi))
    try:
        return ev.sign(p) == 0
    finally:
        ev.pop()


def _disjoint(a: _Root, b: _Root) -> bool:
    return a.hi < b.lo or b.hi < a.lo


def _same_root(ev: Evaluator, r: _Root, m: _Root, k: int) -> bool:
    """Decide equality of two roots; when different, leave their intervals disjoint."""
    while True:
        if _disjoint(r, m):
            return False
        if r.exact and m.exact:
            return r.lo == m.lo
        if r.exact or m.exact:
            e, i = (r, m) if r.exact else (m, r)
            # endpoints of an isolating interval are never roots of its polynomial
            if i.lo < e.lo < i.hi and ev.sign(i.defining.substitute({k: e.lo})) == 0:
                return True
            _refine_root(ev, i, k)
            continue
        if _vanishes_at_root(ev, m.defining, r, k):
            # m is the only root of its polynomial inside (m.lo, m.hi)
            while not r.exact and not (m.lo < r.lo and r.hi < m.hi) and not _disjoint(r, m):
                _refine_root(ev, r, k)
            if not r.exact:
                return not _disjoint(r, m)
            continue
        _refine_root(ev, r, k)
        _refine_root(ev, m, k)


def stack_roots(polys: Sequence[Polynomial], ev: Evaluator) -> tuple[list[StackRoot], frozenset]:
    """Merged ascending distinct roots of ``polys`` over the evaluator's point.

    Each polynomial must have its top variable at position len(point). Returns
    the roots and the indices of polynomials vanishing identically there.
    """
    k = len(ev.coords)
    nullified = set()
    roots: list[_Root] = []
    base_rational = all(j in ev.rational for j in range(k))
    for i, p in enumerate(polys):
        h = ev.trim(p, k)
        if h.is_zero():
            nullified.add(i)
            continue
        if h.degree(k) <= 0:
            continue
        if base_rational:
            dense = upoly.primitive(upoly.square_free(to_dense(ev.reduce(h), k)))
            sq = from_dense(dense, ev.variables, k)
        else:
            sq = ev.square_free(h, k)
        for r in ev.isolate(sq, k):
            if isinstance(r, Fraction):
                roots.append(_Root(r, r, sq, {i}))
            else:
                node = _Root(r[0], r[1], sq, {i})
                node.slo = ev.sign(sq.substitute({k: r[0]}))
                roots.append(node)

    merged: list[_Root] = []
    for r in roots:
        for m in merged:
            if _same_root(ev, r, m, k):
                m.polys |= r.polys
                if r.exact and not m.exact:
                    m.lo = m.hi = r.lo
                break
        else:
            merged.append(r)
    merged.sort(key=lambda r: r.lo)
    # strict separation so that rational points fit between consecutive roots
    for a, b in zip(merged, merged[1:]):
        while not a.hi < b.lo:
            _refine_root(ev, a, k)
            _refine_root(ev, b, k)
    # modest widths give tidy outer sector samples
    for r in merged:
        while not r.exact and r.hi - r.lo > 1:
            _refine_root(ev, r, k)
    out = []
    for r in merged:
        if r.exact:
            value: Coordinate = r.lo
        else:
            value = AlgebraicNumber(r.defining, r.lo, r.hi)
        out.append(StackRoot(value, frozenset(r.polys)))
    return out, frozenset(nullified)


def root_interval(c: Coordinate) -> tuple[Fraction, Fraction]:
    if isinstance(c, AlgebraicNumber):
        return c.lo, c.hi
    return c, c


def sector_samples(roots: Sequence[StackRoot]) -> list[Fraction]:
    """Rational sample for each of the len(roots)+1 sectors of a stack."""
    if not roots:
        return [Fraction(0)]
    ivs = [root_interval(r.value) for r in roots]
    below = Fraction(math.ceil(ivs[0][0]) - 1)
    above = Fraction(math.floor(ivs[-1][1]) + 1)
    mids = [simplest_between(a[1], b[0]) for a, b in zip(ivs, ivs[1:])]
    return [below] + mids + [above]
