"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients over an ordered tuple of variable
names. Zero coefficients are never stored, so two equal polynomials have
identical term maps and structural equality is mathematical equality.
Instances are treated as immutable.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Exponent = tuple  # tuple[int, ...]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(value)


class Polynomial:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        n = len(self.variables)
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        variables = tuple(variables)
        c = as_fraction(value)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, coeff=1) -> "Polynomial":
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def from_univariate(cls, variables: Sequence[str], index: int, coeffs: Sequence) -> "Polynomial":
        """Build sum(coeffs[i] * x_index**i); ``coeffs`` low degree first."""
        variables = tuple(variables)
        n = len(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_fraction(c)
            if c:
                exp = [0] * n
                exp[index] = i
                terms[tuple(exp)] = c
        return cls._raw(variables, terms)

    # -- basic protocol ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.variables!r}, {str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- ring operations ---------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s += c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Polynomial._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Polynomial._raw(self.variables, {})
        terms: dict = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial._raw(self.variables, {})
        return Polynomial._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    # -- structure ---------------------------------------------------
    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.variables):
                raise ValueError(f"variable index {var} out of range")
            return var
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; have {self.variables}") from None

    def degree(self, var: str | int) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        i = self.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def depends_on(self, var: str | int) -> bool:
        i = self.index(var)
        return any(e[i] for e in self.terms)

    def level(self) -> int:
        """1 + index of the last variable actually occurring (0 for constants)."""
        top = 0
        for e in self.terms:
            for i in range(len(e) - 1, top - 1, -1):
                if e[i]:
                    top = i + 1
                    break
        return top

    def coefficients(self, var: str | int) -> list["Polynomial"]:
        """Coefficients in ``var``, index j holding the coefficient of var**j."""
        i = self.index(var)
        d = self.degree(i)
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[i]
            buckets[k][e[:i] + (0,) + e[i + 1:]] = c
        return [Polynomial._raw(self.variables, b) for b in buckets]

    def leading_coefficient(self, var: str | int) -> "Polynomial":
        coeffs = self.coefficients(var)
        if not coeffs:
            return Polynomial.zero(self.variables)
        return coeffs[-1]

    def reductum(self, var: str | int) -> "Polynomial":
        i = self.index(var)
        d = self.degree(i)
        return Polynomial._raw(self.variables, {e: c for e, c in self.terms.items() if e[i] != d})

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(
            self.variables, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- calculus and substitution -----------------------------------
    def derivative(self, var: str | int, times: int = 1) -> "Polynomial":
        i = self.index(var)
        p = self
        for _ in range(times):
            terms = {}
            for e, c in p.terms.items():
                k = e[i]
                if k:
                    terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
            p = Polynomial._raw(self.variables, terms)
        return p

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.variables):
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial has {len(self.variables)} variables")
        pt = [as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute(self, values: Mapping[str | int, object]) -> "Polynomial":
        """Substitute rational values for some variables; the variable tuple is kept."""
        idx = {self.index(k): as_fraction(v) for k, v in values.items()}
        if not idx:
            return self
        terms: dict = {}
        for e, c in self.terms.items():
            v = c
            e2 = list(e)
            for i, x in idx.items():
                if e[i]:
                    v *= x ** e[i]
                    e2[i] = 0
            if v:
                t = tuple(e2)
                terms[t] = terms.get(t, 0) + v
        return Polynomial._raw(self.variables, {e: c for e, c in terms.items() if c})

    def compose(self, mapping: Mapping[str | int, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials sharing one common variable tuple.

        The result lives over the variable tuple of the replacement polynomials;
        variables not in ``mapping`` must also exist there.
        """
        repl = {self.index(k): v for k, v in mapping.items()}
        targets = {p.variables for p in repl.values()}
        if len(targets) > 1:
            raise ValueError("replacement polynomials must share variables")
        out_vars = targets.pop() if targets else self.variables
        images = []
        for i, name in enumerate(self.variables):
            if i in repl:
                images.append(repl[i])
            else:
                images.append(Polynomial.var(out_vars, name) if name in out_vars else None)
        powers: list[dict] = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if images[i] is None:
                    raise ValueError(f"variable {self.variables[i]!r} has no image")
                cache[k] = images[i] ** k
            return cache[k]

        result = Polynomial.zero(out_vars)
        for e, c in self.terms.items():
            term = Polynomial.constant(out_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over another variable tuple (reorder, extend or drop unused)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        mapping = []
        for i, name in enumerate(self.variables):
            if name in pos:
                mapping.append((i, pos[name]))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {name!r} occurs but is missing from {variables}")
        n = len(variables)
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, j in mapping:
                e2[j] = e[i]
            terms[tuple(e2)] = c
        return Polynomial._raw(variables, terms)

    # -- division ----------------------------------------------------
    def _lead(self) -> Exponent:
        # lex order with the last variable most significant
        return max(self.terms, key=lambda e: e[::-1])

    def divides_exactly(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient; raises ArithmeticError if ``divisor`` does not divide."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self.scale(1 / divisor.constant_value())
        dl = divisor._lead()
        dc = divisor.terms[dl]
        rem = dict(self.terms)
        quot: dict = {}
        dterms = list(divisor.terms.items())
        while rem:
            rl = max(rem, key=lambda e: e[::-1])
            if any(a < b for a, b in zip(rl, dl)):
                raise ArithmeticError("polynomial division is not exact")
            shift = tuple(a - b for a, b in zip(rl, dl))
            c = rem[rl] / dc
            quot[shift] = c
            for e, v in dterms:
                t = tuple(a + b for a, b in zip(e, shift))
                s = rem.get(t, 0) - c * v
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Polynomial._raw(self.variables, quot)

    def divmod_monic(self, var: str | int, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division in ``var`` by a divisor whose leading coefficient in ``var`` is constant."""
        i = self.index(var)
        divisor = self._coerce(divisor)
        p = divisor.degree(i)
        if p < 0:
            raise ZeroDivisionError("division by the zero polynomial")
        lc = divisor.leading_coefficient(i)
        if not lc.is_constant():
            raise ValueError("divisor leading coefficient must be constant")
        inv = 1 / lc.constant_value()
        unit = [0] * len(self.variables)
        quotient = Polynomial.zero(self.variables)
        rem = self
        while rem.degree(i) >= p:
            d = rem.degree(i)
            exp = list(unit)
            exp[i] = d - p
            top = rem.leading_coefficient(i) * Polynomial._raw(
                self.variables, {tuple(exp): inv})
            quotient = quotient + top
            rem = rem - top * divisor
        return quotient, rem

    def prem(self, divisor: "Polynomial", var: str | int) -> "Polynomial":
        """Pseudo-remainder lc(divisor)**(deg self - deg divisor + 1) * self mod divisor."""
        i = self.index(var)
        divisor = self._coerce(divisor)
        m, n = self.degree(i), divisor.degree(i)
        if n < 0:
            raise ZeroDivisionError("pseudo-division by zero")
        if m < n:
            return self
        lc = divisor.leading_coefficient(i)
        red = divisor.reductum(i)
        r = self
        delta = m - n + 1
        unit = [0] * len(self.variables)
        while r and r.degree(i) >= n:
            d = r.degree(i)
            exp = list(unit)
            exp[i] = d - n
            xshift = Polynomial._raw(self.variables, {tuple(exp): Fraction(1)})
            r = r.reductum(i) * lc - r.leading_coefficient(i) * xshift * red
            delta -= 1
        if delta:
            r = r * lc ** delta
        return r

    def pdivmod(self, divisor: "Polynomial", var: str | int) -> tuple["Polynomial", "Polynomial"]:
        """(Q, R) with lc(divisor)**(deg self - deg divisor + 1) * self = Q * divisor + R."""
        i = self.index(var)
        divisor = self._coerce(divisor)
        m, n = self.degree(i), divisor.degree(i)
        if n < 0:
            raise ZeroDivisionError("pseudo-division by zero")
        zero = Polynomial.zero(self.variables)
        if m < n:
            return zero, self
        lc = divisor.leading_coefficient(i)
        red = divisor.reductum(i)
        q, r = zero, self
        delta = m - n + 1
        unit = [0] * len(self.variables)
        while r and r.degree(i) >= n:
            d = r.degree(i)
            exp = list(unit)
            exp[i] = d - n
            xshift = Polynomial._raw(self.variables, {tuple(exp): Fraction(1)})
            top = r.leading_coefficient(i) * xshift
            q = q * lc + top
            r = r.reductum(i) * lc - top * red
            delta -= 1
        if delta:
            f = lc ** delta
            q, r = q * f, r * f
        return q, r

    # -- normalization -----------------------------------------------
    def numeric_content(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def leading_term_coefficient(self) -> Fraction:
        return self.terms[self._lead()]

    def primitive(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        c = self.numeric_content()
        if self.terms[self._lead()] < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.terms[self._lead()])


def format_rational(c: Fraction) -> str:
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def term_order_key(exp: Exponent):
    return (sum(exp), exp)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for exp in sorted(p.terms, key=term_order_key, reverse=True):
        c = p.terms[exp]
        mono = "*".join(
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(p.variables, exp) if k)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def unify(polys: Iterable[Polynomial]) -> list[Polynomial]:
    """Bring polynomials onto a common variable tuple (first-seen order)."""
    polys = list(polys)
    names: list[str] = []
    for p in polys:
        for v in p.variables:
            if v not in names:
                names.append(v)
    return [p.with_variables(names) for p in polys]
