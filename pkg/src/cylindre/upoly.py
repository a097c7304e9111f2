"""Dense univariate polynomials over Q as coefficient lists, lowest degree first.

These are the fast path used by root isolation when every coordinate of a base
point is rational. The zero polynomial is the empty list.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor, gcd, lcm
from typing import Sequence

UPoly = list  # list[Fraction]


def strip(a: Sequence) -> UPoly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def add(a: Sequence, b: Sequence) -> UPoly:
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> UPoly:
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: Sequence, b: Sequence) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def scale(a: Sequence, c) -> UPoly:
    return strip([x * c for x in a])


def derivative(a: Sequence) -> UPoly:
    return strip([a[i] * i for i in range(1, len(a))])


def evaluate(a: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def divmod_(a: Sequence, b: Sequence) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = strip(a)
    db = len(b) - 1
    inv = 1 / Fraction(b[-1])
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    r = list(a)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return strip(q), strip(r[:db])


def rem(a: Sequence, b: Sequence) -> UPoly:
    return divmod_(a, b)[1]


def monic(a: Sequence) -> UPoly:
    a = strip(a)
    if not a:
        return a
    inv = 1 / Fraction(a[-1])
    return [c * inv for c in a]


def primitive(a: Sequence) -> UPoly:
    """Integer coefficients, content 1, positive leading coefficient."""
    a = strip(a)
    if not a:
        return a
    den = 1
    for c in a:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [Fraction(c // g) for c in ints]


def gcd_(a: Sequence, b: Sequence) -> UPoly:
    a, b = strip(a), strip(b)
    while b:
        a, b = b, primitive(rem(a, b))
    return monic(a)


def square_free(a: Sequence) -> UPoly:
    a = strip(a)
    if not a:
        raise ValueError("square-free part of the zero polynomial")
    if len(a) <= 2:
        return monic(a)
    g = gcd_(a, derivative(a))
    return monic(divmod_(a, g)[0])


def _positive_scale(a: Sequence) -> UPoly:
    p = primitive(a)
    return [-c for c in p] if p and (p[-1] > 0) != (a[-1] > 0) else p


def sturm_sequence(a: Sequence) -> list[UPoly]:
    seq = [_positive_scale(a), _positive_scale(derivative(a))]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        seq.append([-c for c in _positive_scale(r)] if r else [])
    seq.pop()
    return seq


def variations(values) -> int:
    last = 0
    count = 0
    for v in values:
        s = sign(v)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def count_roots(seq: list, lo, hi) -> int:
    """Distinct roots in (lo, hi]; ``lo`` must not be a root."""
    return (variations(evaluate(p, lo) for p in seq)
            - variations(evaluate(p, hi) for p in seq))


def rational_root_in(a: Sequence, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The rational root of ``a`` inside the isolating interval (lo, hi), if there is one.

    A rational root n/q in lowest terms has q dividing the leading coefficient
    L of the primitive integer form, so it equals m/L for an integer m. Once
    the interval is narrower than 1/L there is a single candidate left.
    """
    p = primitive(a)
    if len(p) < 2:
        return None
    lead = abs(int(p[-1]))
    s_lo = sign(evaluate(p, lo))
    if s_lo == 0 or s_lo == sign(evaluate(p, hi)):
        return None
    while (hi - lo) * lead >= 1:
        mid = (lo + hi) / 2
        s = sign(evaluate(p, mid))
        if s == 0:
            return mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    m = floor(lo * lead) + 1
    if Fraction(m, lead) < hi and not evaluate(p, Fraction(m, lead)):
        return Fraction(m, lead)
    return None


def cauchy_like_bound(a: Sequence) -> Fraction:
    """Power of two strictly larger than every root modulus (via the monic bound)."""
    from .division import root_bound

    a = strip(a)
    lc = Fraction(a[-1])
    d = len(a) - 1
    coeffs = [Fraction(a[d - j]) / lc for j in range(1, d + 1)]
    b = root_bound(coeffs)
    p = Fraction(1)
    while p <= b:
        p *= 2
    return p


def isolate(a: Sequence) -> list:
    """Isolate the distinct real roots of ``a``.

    Returns an ascending list whose entries are either a Fraction (exact
    rational root) or a pair (lo, hi) of Fractions with lo < hi, neither a
    root, containing exactly one root of ``a``.
    """
    a = strip(a)
    if not a:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if len(a) == 1:
        return []
    f = square_free(a)
    if len(f) == 2:
        return [-f[0] / f[1]]
    seq = sturm_sequence(f)
    bound = cauchy_like_bound(f)
    out: list = []
    stack = [(-bound, bound, count_roots(seq, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if not evaluate(f, mid):
            out.append(mid)
            eps = (hi - lo) / 4
            while not evaluate(f, mid + eps) or not evaluate(f, mid - eps) \
                    or count_roots(seq, mid - eps, mid + eps) != 1:
                eps /= 2
            stack.append((lo, mid - eps, count_roots(seq, lo, mid - eps)))
            stack.append((mid + eps, hi, count_roots(seq, mid + eps, hi)))
            continue
        stack.append((lo, mid, count_roots(seq, lo, mid)))
        stack.append((mid, hi, count_roots(seq, mid, hi)))
    result = []
    for r in out:
        if isinstance(r, tuple):
            cand = rational_root_in(f, r[0], r[1])
            if cand is not None:
                r = cand
        result.append(r)
    result.sort(key=lambda r: r if isinstance(r, Fraction) else r[0])
    return result


def refine(f: Sequence, lo: Fraction, hi: Fraction, width: Fraction):
    """Bisect an isolating interval of square-free ``f`` until narrower than ``width``.

    Returns a Fraction if an exact root is hit, else the refined pair.
    """
    slo = sign(evaluate(f, lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign(evaluate(f, mid))
        if s == 0:
            return mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
