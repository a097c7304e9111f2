"""Cylindrical algebraic decomposition: projection, base decomposition and lifting.

Cells are addressed by paths. Entry k of a path is the position of the cell in
its stack at level k+1: even entries are sectors (2j is the band between the
j-th and (j+1)-th roots, counting from 1, with the outer bands unbounded), odd
entries are sections (2j-1 is the graph of the j-th root).
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import formula as fm
from .elimination import dedupe_factors, project, square_free_factors
from .poly import Polynomial
from .roots import (AlgebraicNumber, Evaluator, SamplePoint, StackRoot, root_interval,
                    sector_samples, stack_roots)

DEFAULT_MAX_CELLS = 100_000


class CellLimitExceeded(RuntimeError):
    """More cells than the configured limit."""


def max_cells() -> int:
    raw = os.environ.get("CYLINDRE_MAX_CELLS")
    if not raw:
        return DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CYLINDRE_MAX_CELLS must be an integer, got {raw!r}") from None


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Cell:
    path: tuple
    sample: SamplePoint
    signs: tuple  # per level, the signs of that level's family at the sample

    @property
    def level(self) -> int:
        return len(self.path)

    @property
    def dimension(self) -> int:
        return sum(1 for i in self.path if i % 2 == 0)

    @property
    def base_path(self) -> tuple:
        return self.path[:-1]

    @property
    def kinds(self) -> tuple:
        """("sector", j, j+1) or ("section", j) per level; roots count from 1, 0 is -inf."""
        out = []
        for i in self.path:
            if i % 2:
                out.append(("section", (i + 1) // 2))
            else:
                out.append(("sector", i // 2, i // 2 + 1))
        return tuple(out)

    def is_section(self) -> bool:
        return bool(self.path) and self.path[-1] % 2 == 1


@dataclass(frozen=True)
class Stack:
    roots: tuple  # StackRoot values, ascending
    nullified: frozenset  # family indices vanishing identically over the base sample

    @property
    def size(self) -> int:
        return 2 * len(self.roots) + 1


@dataclass
class Decomposition:
    variables: tuple
    inputs: tuple
    families: tuple  # families[k] holds level-(k+1) polynomials
    cells: dict  # path -> Cell, every level
    stacks: dict  # base path -> Stack
    input_factors: tuple  # per input: (kappa, ((level, index, exponent), ...))
    thom: bool = False
    input_signs: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def leaves(self) -> list[Cell]:
        n = self.dimension
        return [c for p, c in sorted(self.cells.items()) if len(p) == n]

    def cells_at(self, level: int) -> list[Cell]:
        return [c for p, c in sorted(self.cells.items()) if len(p) == level]

    def stack_sizes(self, level: int) -> list[int]:
        """Sizes of the stacks built at ``level`` (1-based), ordered by base path."""
        return [s.size for b, s in sorted(self.stacks.items()) if len(b) == level - 1]

    def family_index(self, p: Polynomial) -> tuple[int, int]:
        for k, fam in enumerate(self.families):
            for i, q in enumerate(fam):
                if q == p:
                    return k, i
        raise KeyError(f"{p} is not in any family")

    def nullified_cells(self) -> list[tuple]:
        return sorted(b for b, s in self.stacks.items() if s.nullified)

    def input_sign(self, path: tuple, j: int) -> int:
        kappa, facs = self.input_factors[j]
        cell = self.cells[path]
        s = _sgn(kappa)
        for level, idx, e in facs:
            s *= cell.signs[level][idx] ** e
        return s

    def sign_of(self, path: tuple, p: Polynomial) -> int:
        """Sign of an input or family polynomial (or a constant) on a leaf."""
        p = p.with_variables(self.variables) if p.variables != self.variables else p
        if p.is_constant():
            return _sgn(p.constant_value())
        if p in self._input_pos:
            return self.input_signs[path][self._input_pos[p]]
        k, i = self.family_index(p)
        return self.cells[path].signs[k][i]

    @property
    def _input_pos(self) -> dict:
        cache = self.__dict__.get("_ip")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.inputs)}
            self.__dict__["_ip"] = cache
        return cache


# -- building families --------------------------------------------------

def _closure_under_derivative(polys: list[Polynomial], k: int) -> list[Polynomial]:
    out = list(polys)
    frontier = list(polys)
    while frontier:
        nxt = []
        for p in frontier:
            if p.level() - 1 != k:
                continue
            d = p.derivative(k)
            if d.is_constant():
                continue
            for f in dedupe_factors([d]):
                if f not in out:
                    out.append(f)
                    nxt.append(f)
        frontier = nxt
    return out


def build_families(polys: Sequence[Polynomial], n: int, thom: bool = False) -> list[list[Polynomial]]:
    """Per-level families: square-free factors of the inputs closed under projection."""
    levels: list[list[Polynomial]] = [[] for _ in range(n)]

    def add(fs: Iterable[Polynomial]) -> None:
        for f in fs:
            lv = f.level()
            if lv and f not in levels[lv - 1]:
                levels[lv - 1].append(f)

    add(dedupe_factors(polys))
    for k in range(n - 1, -1, -1):
        if thom:
            fam = _closure_under_derivative(levels[k], k)
            add(f for f in fam if f.level() - 1 == k)
            add(f for f in fam if f.level() - 1 < k)
        levels[k].sort(key=lambda f: (f.total_degree(), str(f)))
        if k > 0 and levels[k]:
            add(project(levels[k], k))
    return levels


# -- lifting ----------------------------------------------------------------

def lift_stack(base: Cell | None, family: Sequence[Polynomial],
               variables: Sequence[str]) -> tuple[list[Cell], Stack]:
    """The 2m+1 cells over ``base`` (None for the real line) cut out by ``family``."""
    variables = tuple(variables)
    base_coords = base.sample.coords if base is not None else ()
    base_path = base.path if base is not None else ()
    base_signs = base.signs if base is not None else ()
    ev = Evaluator(base_coords, variables)
    roots, nullified = stack_roots(list(family), ev)
    samples = sector_samples(roots)
    sector_signs = []
    for c in samples:
        ev.push(c)
        try:
            sector_signs.append(tuple(0 if i in nullified else ev.sign(p)
                                      for i, p in enumerate(family)))
        finally:
            ev.pop()
    cells = []
    for j, c in enumerate(samples):
        point = SamplePoint(tuple(base_coords) + (c,))
        cells.append(Cell(base_path + (2 * j,), point, base_signs + (sector_signs[j],)))
        if j < len(roots):
            r = roots[j]
            signs = tuple(0 if (i in r.vanishing or i in nullified) else s
                          for i, s in enumerate(sector_signs[j]))
            point = SamplePoint(tuple(base_coords) + (r.value,))
            cells.append(Cell(base_path + (2 * j + 1,), point, base_signs + (signs,)))
    return cells, Stack(tuple(roots), frozenset(nullified))


def decompose(polys: Sequence[Polynomial], variables: Sequence[str] | None = None,
              thom: bool = False, guards: Sequence[Polynomial] = ()) -> Decomposition:
    """Sign-invariant cylindrical decomposition for ``polys`` (plus caller guards).

    With ``thom`` every family is closed under differentiation in its main
    variable, so that sign vectors alone tell cells apart.
    """
    polys = list(polys) + list(guards)
    if variables is None:
        if not polys:
            raise ValueError("no variables given")
        variables = polys[0].variables
    variables = tuple(variables)
    if not variables:
        raise ValueError("empty variable list")
    polys = [p.with_variables(variables) if p.variables != variables else p for p in polys]
    inputs = tuple(dict.fromkeys(p for p in polys if not p.is_constant()))
    n = len(variables)
    families = [tuple(f) for f in build_families(inputs, n, thom)]
    input_factors = []
    for p in inputs:
        kappa, facs = square_free_factors(p)
        refs = []
        for f, e in facs:
            k = f.level() - 1
            refs.append((k, families[k].index(f), e))
        input_factors.append((kappa, tuple(refs)))
    limit = max_cells()
    cells: dict = {}
    stacks: dict = {}
    bases: list = [None]
    total = 0
    for k in range(n):
        nxt = []
        for base in bases:
            new, stack = lift_stack(base, families[k], variables)
            total += len(new)
            if total > limit:
                raise CellLimitExceeded(f"decomposition exceeds {limit} cells")
            stacks[base.path if base is not None else ()] = stack
            for c in new:
                cells[c.path] = c
            nxt.extend(new)
        bases = nxt
    d = Decomposition(variables, inputs, tuple(families), cells, stacks,
                      tuple(input_factors), thom)
    for c in d.leaves():
        d.input_signs[c.path] = tuple(d.input_sign(c.path, j) for j in range(len(inputs)))
    return d


def satisfying_cells(f: fm.Formula, d: Decomposition) -> list[tuple]:
    """Paths of the leaves on which ``f`` holds, in path order."""
    for a in fm.atoms(f):
        p = a.poly.with_variables(d.variables) if a.poly.variables != d.variables else a.poly
        if not p.is_constant() and p not in d._input_pos:
            try:
                d.family_index(p)
            except KeyError:
                raise ValueError(f"atom polynomial {p} was not part of the decomposition") from None
    out = []
    for c in d.leaves():
        if fm.evaluate(f, lambda p, path=c.path: d.sign_of(path, p)):
            out.append(c.path)
    return out


# -- probing with rational points ---------------------------------------

def _position(q: Fraction, roots: Sequence[StackRoot], ev: Evaluator, k: int) -> int:
    """Index in the stack (even: sector, odd: section) of coordinate q."""
    for j, r in enumerate(roots):
        v = r.value
        if isinstance(v, AlgebraicNumber) and not v.is_rational:
            if q <= v.lo:
                return 2 * j
            if q < v.hi:
                d = ev.reduce(v.defining.with_variables(ev.variables)
                              if v.defining.variables != ev.variables else v.defining)
                s_q = ev.sign(d.substitute({k: q}))
                if s_q == 0:
                    return 2 * j + 1
                s_lo = ev.sign(d.substitute({k: v.lo}))
                # intervals are disjoint, so above the root means the next sector
                return 2 * j if s_q == s_lo else 2 * j + 2
        else:
            val = v.lo if isinstance(v, AlgebraicNumber) else v
            if q < val:
                return 2 * j
            if q == val:
                return 2 * j + 1
    return 2 * len(roots)


def locate(d: Decomposition, point: Sequence) -> tuple | None:
    """Path of the leaf containing a rational point (None if the stack structure differs)."""
    point = [Fraction(x) for x in point]
    if len(point) != d.dimension:
        raise ValueError("point dimension mismatch")
    path: tuple = ()
    for k in range(d.dimension):
        ev = Evaluator(point[:k], d.variables)
        roots, _ = stack_roots(list(d.families[k]), ev)
        stack = d.stacks.get(path)
        if stack is None or len(stack.roots) != len(roots):
            return None
        path = path + (_position(point[k], roots, ev, k),)
    return path


def family_signs(d: Decomposition, point: Sequence) -> tuple:
    point = [Fraction(x) for x in point]
    return tuple(tuple(_sgn(p.evaluate(point)) for p in fam) for fam in d.families)


def matching_leaves(d: Decomposition, point: Sequence) -> list[tuple]:
    """Leaves whose stored sign vector equals the family signs at ``point``."""
    s = family_signs(d, point)
    return [c.path for c in d.leaves() if c.signs == s]


def random_point(d: Decomposition, path: tuple, rng: random.Random,
                 spread: Fraction = Fraction(4)) -> tuple | None:
    """A random rational point of the cell, or None when a section coordinate is irrational."""
    point: list = []
    for k, idx in enumerate(path):
        ev = Evaluator(point, d.variables)
        roots, _ = stack_roots(list(d.families[k]), ev)
        if idx % 2:
            j = (idx - 1) // 2
            if j >= len(roots):
                return None
            v = roots[j].value
            if isinstance(v, AlgebraicNumber):
                if not v.is_rational:
                    return None
                v = v.lo
            point.append(v)
            continue
        j = idx // 2
        if j > len(roots):
            return None
        lo = root_interval(roots[j - 1].value)[1] if j > 0 else None
        hi = root_interval(roots[j].value)[0] if j < len(roots) else None
        if lo is None and hi is None:
            lo, hi = -spread, spread
        elif lo is None:
            lo = hi - spread
        elif hi is None:
            hi = lo + spread
        t = Fraction(rng.randint(1, 999), 1000)
        point.append(lo + (hi - lo) * t)
    return tuple(point)


def describe_cell(d: Decomposition, path: tuple) -> fm.Formula:
    """Conjunction of the cell's signs on every family polynomial, all levels."""
    cell = d.cells[path]
    atoms = []
    for k in range(len(path)):
        for p, s in zip(d.families[k], cell.signs[k]):
            atoms.append(fm.Atom(p, fm.sign_relation(s)))
    return fm.And(tuple(atoms))


def decompose_formula(f: fm.Formula, variables: Sequence[str], thom: bool = False,
                      guards: Sequence[Polynomial] = ()) -> Decomposition:
    return decompose(fm.polynomials(f), variables, thom=thom, guards=guards)


def count_cells(d: Decomposition) -> int:
    return len(d.leaves())


__all__ = [
    "Cell", "CellLimitExceeded", "Decomposition", "Stack", "build_families", "count_cells",
    "decompose", "decompose_formula", "describe_cell", "family_signs", "lift_stack", "locate",
    "matching_leaves", "max_cells", "random_point", "satisfying_cells",
]

