"""Quantifier-free formulas over polynomial sign conditions.

Formulas are kept in negation normal form: ``not`` is pushed onto atoms by
flipping the relation, so the tree only has atoms, conjunctions and
disjunctions. Every atom is stored as ``poly rel 0``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .poly import Polynomial, format_polynomial

RELATIONS = ("=", "!=", "<", "<=", ">", ">=")
_NEGATED = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}
_ALIASES = {"==": "=", "<>": "!=", "≠": "!=", "≤": "<=", "≥": ">="}


def relation_holds(rel: str, sign: int) -> bool:
    if rel == "=":
        return sign == 0
    if rel == "!=":
        return sign != 0
    if rel == "<":
        return sign < 0
    if rel == "<=":
        return sign <= 0
    if rel == ">":
        return sign > 0
    if rel == ">=":
        return sign >= 0
    raise ValueError(f"unknown relation {rel!r}")


def sign_relation(sign: int) -> str:
    return {-1: "<", 0: "=", 1: ">"}[sign]


@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def negate(self) -> "Atom":
        return Atom(self.poly, _NEGATED[self.rel])


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


Formula = Union[Atom, And, Or]


def negate(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return f.negate()
    if isinstance(f, And):
        return Or(tuple(negate(g) for g in f.items))
    return And(tuple(negate(g) for g in f.items))


def atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    else:
        for g in f.items:
            yield from atoms(g)


def polynomials(f: Formula) -> list[Polynomial]:
    """Distinct nonconstant atom polynomials in first-seen order."""
    seen: dict = {}
    for a in atoms(f):
        if not a.poly.is_constant():
            seen.setdefault(a.poly, None)
    return list(seen)


def evaluate(f: Formula, sign_of) -> bool:
    """Truth value given a callable mapping an atom polynomial to its sign."""
    if isinstance(f, Atom):
        return relation_holds(f.rel, sign_of(f.poly))
    if isinstance(f, And):
        return all(evaluate(g, sign_of) for g in f.items)
    return any(evaluate(g, sign_of) for g in f.items)


def evaluate_at(f: Formula, point: Sequence) -> bool:
    def sign_of(p: Polynomial) -> int:
        v = p.evaluate(point)
        return (v > 0) - (v < 0)
    return evaluate(f, sign_of)


def variables_of(f: Formula) -> tuple:
    for a in atoms(f):
        return a.poly.variables
    return ()


def with_variables(f: Formula, variables: Sequence[str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.poly.with_variables(variables), f.rel)
    return type(f)(tuple(with_variables(g, variables) for g in f.items))


def map_polys(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return Atom(fn(f.poly), f.rel)
    return type(f)(tuple(map_polys(g, fn) for g in f.items))


# -- serialization ------------------------------------------------------

def format_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{format_polynomial(f.poly)} {f.rel} 0"
    if not f.items:
        return "0 = 0" if isinstance(f, And) else "1 = 0"
    word = " and " if isinstance(f, And) else " or "
    parts = []
    for g in f.items:
        s = format_formula(g)
        if not isinstance(g, Atom) and len(g.items) > 1:
            s = f"({s})"
        parts.append(s)
    return word.join(parts)


# -- parsing --------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line, self.column, self.expected = line, column, tuple(expected)
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|<=|>=|==|!=|<>|[-+*/^()<>=≠≤≥])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise _error(text, i, f"unexpected character {text[i]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "name" and tok in ("and", "or", "not"):
                kind = "kw"
            if kind == "op" and tok in _ALIASES:
                tok = _ALIASES[tok]
            out.append(_Tok(kind, tok, i))
        i = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, msg: str, expected=()) -> FormulaSyntaxError:
    line, col = _line_col(text, pos)
    return FormulaSyntaxError(msg, line, col, expected)


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str, expected=()) -> FormulaSyntaxError:
        return _error(self.text, self.tok.pos, msg, expected)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            got = self.tok.text or "end of input"
            raise self.fail(f"unexpected {got!r}", [repr(text)])

    # formula level
    def formula(self) -> Formula:
        items = [self.conj()]
        while self.accept("or"):
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self) -> Formula:
        items = [self.lit()]
        while self.accept("and"):
            items.append(self.lit())
        return items[0] if len(items) == 1 else And(tuple(items))

    def lit(self) -> Formula:
        if self.accept("not"):
            return negate(self.lit())
        if self.tok.text == "(":
            save = self.i
            self.i += 1
            try:
                inner = self.formula()
                self.expect(")")
            except FormulaSyntaxError:
                inner = None
            if inner is not None and self.tok.text not in RELATIONS + ("+", "-", "*", "/", "^", "**"):
                return inner
            self.i = save
        return self.atom()

    def atom(self) -> Atom:
        lhs = self.expr()
        if self.tok.text not in RELATIONS:
            got = self.tok.text or "end of input"
            raise self.fail(f"unexpected {got!r}", [repr(r) for r in RELATIONS])
        rel = self.tok.text
        self.i += 1
        rhs = self.expr()
        return Atom(lhs - rhs, rel)

    # polynomial level
    def expr(self) -> Polynomial:
        if self.accept("-"):
            out = -self.term()
        else:
            self.accept("+")
            out = self.term()
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> Polynomial:
        out = self.power()
        while True:
            if self.accept("*"):
                out = out * self.power()
            elif self.tok.text == "/":
                pos = self.tok.pos
                self.i += 1
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise _error(self.text, pos, "division only by nonzero constants")
                out = out.scale(1 / d.constant_value())
            else:
                return out

    def power(self) -> Polynomial:
        if self.accept("-"):
            return -self.power()
        base = self.primary()
        if self.tok.text in ("^", "**"):
            self.i += 1
            if self.tok.kind != "num" or "." in self.tok.text:
                raise self.fail("exponent must be a non-negative integer", ["integer"])
            e = int(self.tok.text)
            self.i += 1
            return base ** e
        return base

    def primary(self) -> Polynomial:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Polynomial.constant(self.vars, Fraction(t.text))
        if t.kind == "name":
            if t.text not in self.vars:
                raise self.fail(f"unknown variable {t.text!r}", [repr(v) for v in self.vars])
            self.i += 1
            return Polynomial.var(self.vars, t.text)
        if self.accept("("):
            out = self.expr()
            self.expect(")")
            return out
        got = t.text or "end of input"
        raise self.fail(f"unexpected {got!r}", ["number", "variable", "'('"])


def parse_formula(text: str, variables: Sequence[str]) -> Formula:
    p = _Parser(text, variables)
    f = p.formula()
    if p.tok.kind != "end":
        raise p.fail(f"unexpected {p.tok.text!r}", ["'and'", "'or'", "end of input"])
    return f


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    p = _Parser(text, variables)
    out = p.expr()
    if p.tok.kind != "end":
        raise p.fail(f"unexpected {p.tok.text!r}", ["operator", "end of input"])
    return out
