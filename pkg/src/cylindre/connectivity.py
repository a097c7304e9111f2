"""Cell adjacency, connected components and their sign-condition descriptions.

Two leaves are adjacent when the closure of one meets the other. In the plane
this is decided exactly: over a base sector I next to a base point b, the
section functions of the stack over I have limits at b, and those limits are
read off by counting, at a rational abscissa x0 close enough to b, how many
roots lie below each sector sample of the stack over b. "Close enough" is
certified with Sturm sequences: no root of f(x, c) for any family polynomial f
and sample c lies strictly between b and x0, so no root function crosses the
horizontal lines y = c on that stretch. Three-dimensional adjacency reuses the
same counting at points picked near the lower cell and is flagged as
heuristic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import formula as fm
from . import upoly
from .cad import Decomposition, _position, describe_cell, satisfying_cells
from .roots import AlgebraicNumber, Evaluator, root_interval, stack_roots, to_dense


class UnsupportedDimension(ValueError):
    """Adjacency is only available up to dimension 3."""


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in out.values()]


@dataclass(frozen=True)
class AdjacencyGraph:
    vertices: tuple
    edges: frozenset  # of (a, b) with a < b
    certified: bool = True

    def neighbors(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for a, b in sorted(self.edges):
            out[a].append(b)
            out[b].append(a)
        return out

    def has_edge(self, a, b) -> bool:
        return (min(a, b), max(a, b)) in self.edges


def _edge(a, b) -> tuple:
    if a == b:
        raise ValueError("self loop")
    return (a, b) if a < b else (b, a)


# -- limits of root functions at a base point ---------------------------------

class _Neighborhood:
    """Shrinking rational interval (lo, hi) around a point b of the real line."""

    def __init__(self, b, prev_hi: Fraction | None, next_lo: Fraction | None):
        if isinstance(b, AlgebraicNumber) and not b.is_rational:
            self.exact = None
            self.defining = upoly.square_free(to_dense(b.defining, 0))
            self.lo, self.hi = b.lo, b.hi
            self.slo = upoly.sign(upoly.evaluate(self.defining, self.lo))
        else:
            v = b.lo if isinstance(b, AlgebraicNumber) else Fraction(b)
            self.exact = v
            self.lo = (prev_hi + v) / 2 if prev_hi is not None else v - 1
            self.hi = (next_lo + v) / 2 if next_lo is not None else v + 1

    def shrink(self) -> None:
        if self.exact is not None:
            self.lo = (self.lo + self.exact) / 2
            self.hi = (self.hi + self.exact) / 2
            return
        mid = (self.lo + self.hi) / 2
        s = upoly.sign(upoly.evaluate(self.defining, mid))
        if s == 0:
            self.exact = mid
            self.lo = (self.lo + mid) / 2
            self.hi = (self.hi + mid) / 2
        elif s == self.slo:
            self.lo = mid
        else:
            self.hi = mid

    def is_root(self, g: list) -> bool:
        if self.exact is not None:
            return upoly.evaluate(g, self.exact) == 0
        h = upoly.gcd_(g, self.defining)
        if len(h) <= 1:
            return False
        return upoly.count_roots(upoly.sturm_sequence(h), self.lo, self.hi) > 0

    def clean_for(self, g: list, seq: list) -> bool:
        """g has no root in [lo, b) or (b, hi]."""
        if upoly.evaluate(g, self.lo) == 0 or upoly.evaluate(g, self.hi) == 0:
            return False
        inside = upoly.count_roots(seq, self.lo, self.hi)
        return inside == (1 if self.is_root(g) else 0)


def _univariate_in_x(p, c: Fraction) -> list:
    q = p.substitute({1: c})
    return to_dense(q, 0) if not q.is_zero() else []


def _count_below(d: Decomposition, x0: Fraction, cuts: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Distinct roots of the level-2 family over x = x0: total, and how many lie below each cut."""
    prod = [Fraction(1)]
    for p in d.families[1]:
        g = to_dense(p.substitute({0: x0}), 1)
        if g:
            prod = upoly.mul(prod, g)
    if len(prod) <= 1:
        return 0, [0 for _ in cuts]
    f = upoly.square_free(prod)
    seq = upoly.sturm_sequence(f)
    bound = upoly.cauchy_like_bound(f)
    total = upoly.count_roots(seq, -bound, bound)
    below = []
    for c in cuts:
        if upoly.evaluate(f, c) == 0:
            raise AssertionError("sector sample became a root")
        below.append(upoly.count_roots(seq, -bound, c) if c > -bound else 0)
    return total, below


def _limit_indices(m: int, below: Sequence[int]) -> list[int]:
    """Stack index over b of the limits L_0 = -inf, L_1..L_m, L_{m+1} = +inf.

    ``below[i]`` counts the roots under the i-th sector sample over b. Root j
    with below[i-1] < j <= below[i] tends to the i-th root over b; infinite
    limits map to the outer sectors.
    """
    r = len(below) - 1
    out = [0]
    for j in range(1, m + 1):
        idx = None
        for i, n in enumerate(below):
            if j <= n:
                idx = 0 if i == 0 else 2 * i - 1
                break
        out.append(2 * r if idx is None else idx)
    out.append(2 * r)
    return out


def _finite(m: int, below: Sequence[int], j: int) -> bool:
    return below[0] < j <= below[-1]


def _plane_edges(d: Decomposition, edges: set) -> None:
    base = d.stacks[()]
    roots1 = base.roots
    for i in range(len(roots1)):
        b_path = (2 * i + 1,)
        b_value = roots1[i].value
        prev_hi = root_interval(roots1[i - 1].value)[1] if i > 0 else None
        next_lo = root_interval(roots1[i + 1].value)[0] if i + 1 < len(roots1) else None
        over_b = d.stacks[b_path]
        r = len(over_b.roots)
        cuts = [d.cells[b_path + (2 * t,)].sample.coords[1] for t in range(r + 1)]
        polys = []
        for p in d.families[1]:
            for c in cuts:
                g = _univariate_in_x(p, c)
                if not g:
                    raise AssertionError("family polynomial vanishes on a horizontal line through a sample")
                if len(g) > 1:
                    sq = upoly.square_free(g)
                    polys.append((sq, upoly.sturm_sequence(sq)))
        hood = _Neighborhood(b_value, prev_hi, next_lo)
        while not all(hood.clean_for(g, seq) for g, seq in polys):
            hood.shrink()
        for side, x0 in ((2 * i, hood.lo), (2 * i + 2, hood.hi)):
            i_path = (side,)
            over_i = d.stacks[i_path]
            m = len(over_i.roots)
            total, below = _count_below(d, x0, cuts)
            if total != m:
                raise AssertionError(f"root count {total} near the base point differs from the stack size {m}")
            limits = _limit_indices(m, below)
            for j in range(1, m + 1):
                if _finite(m, below, j):
                    edges.add(_edge(i_path + (2 * j - 1,), b_path + (limits[j],)))
            for j in range(m + 1):
                lo_idx, hi_idx = limits[j], limits[j + 1]
                for t in range(lo_idx, hi_idx + 1):
                    edges.add(_edge(i_path + (2 * j,), b_path + (t,)))


def _stack_edges(d: Decomposition, edges: set, level: int) -> None:
    for base, stack in d.stacks.items():
        if len(base) != level - 1:
            continue
        for t in range(stack.size - 1):
            edges.add(_edge(base + (t,), base + (t + 1,)))


# -- heuristic limits in dimension three ---------------------------------------

def _approx(c) -> Fraction:
    if isinstance(c, AlgebraicNumber):
        return (c.lo + c.hi) / 2
    return Fraction(c)


def _point_near(d: Decomposition, a_path: tuple, target: Sequence[Fraction], delta: Fraction):
    """A point of cell ``a_path`` (rational or algebraic coordinates) near ``target``."""
    point: list = []
    for k, idx in enumerate(a_path):
        ev = Evaluator(point, d.variables)
        roots, _ = stack_roots(list(d.families[k]), ev)
        if idx % 2:
            j = (idx - 1) // 2
            if j >= len(roots):
                return None
            point.append(roots[j].value)
            continue
        j = idx // 2
        if j > len(roots):
            return None
        lo = root_interval(roots[j - 1].value)[1] if j > 0 else None
        hi = root_interval(roots[j].value)[0] if j < len(roots) else None
        want = target[k]
        cands = [want - delta, want + delta, want]
        pick = None
        for c in cands:
            if (lo is None or c > lo) and (hi is None or c < hi):
                pick = c
                break
        if pick is None:
            # target outside the sector: step inward from the nearer boundary
            if lo is not None and hi is not None:
                step = min(delta, (hi - lo) / 2)
                pick = lo + step if abs(want - lo) <= abs(want - hi) else hi - step
            elif lo is not None:
                pick = lo + delta
            else:
                pick = hi - delta
        point.append(pick)
    return point


def _spatial_edges(d: Decomposition, base_graph: AdjacencyGraph, edges: set) -> None:
    for a, b in sorted(base_graph.edges):
        ca, cb = d.cells[a], d.cells[b]
        if ca.dimension == cb.dimension:
            continue
        hi_cell, lo_cell = (ca, cb) if ca.dimension > cb.dimension else (cb, ca)
        over_lo = d.stacks[lo_cell.path]
        over_hi = d.stacks[hi_cell.path]
        r, m = len(over_lo.roots), len(over_hi.roots)
        cuts = [d.cells[lo_cell.path + (2 * t,)].sample.coords[2] for t in range(r + 1)]
        target = [_approx(c) for c in lo_cell.sample.coords]
        previous = None
        below = None
        for s in range(3, 18):
            pt = _point_near(d, hi_cell.path, target, Fraction(1, 2 ** s))
            if pt is None:
                break
            ev = Evaluator(pt, d.variables)
            roots, _ = stack_roots(list(d.families[2]), ev)
            if len(roots) != m:
                continue
            pos = [_position(Fraction(c), roots, ev, 2) for c in cuts]
            if any(p % 2 for p in pos):
                continue
            current = [p // 2 for p in pos]
            if current == previous:
                below = current
                break
            previous = current
        if below is None:
            below = previous
        if below is None:
            continue
        limits = _limit_indices(m, below)
        for j in range(1, m + 1):
            if _finite(m, below, j):
                edges.add(_edge(hi_cell.path + (2 * j - 1,), lo_cell.path + (limits[j],)))
        for j in range(m + 1):
            for t in range(limits[j], limits[j + 1] + 1):
                edges.add(_edge(hi_cell.path + (2 * j,), lo_cell.path + (t,)))


def _restricted(d: Decomposition, levels: int) -> Decomposition:
    """The decomposition of the first ``levels`` coordinates, sharing cells and families."""
    cells = {p: c for p, c in d.cells.items() if len(p) <= levels}
    stacks = {b: s for b, s in d.stacks.items() if len(b) < levels}
    return Decomposition(d.variables, (), d.families[:levels], cells, stacks, (), d.thom)


def _graph_for(d: Decomposition, n: int) -> tuple[set, bool]:
    edges: set = set()
    if n == 1:
        _stack_edges(d, edges, 1)
        return edges, True
    if n == 2:
        _stack_edges(d, edges, 2)
        _plane_edges(d, edges)
        return edges, True
    base = _restricted(d, 2)
    base_edges, _ = _graph_for(base, 2)
    base_graph = AdjacencyGraph(tuple(c.path for c in base.cells_at(2)), frozenset(base_edges))
    _stack_edges(d, edges, 3)
    _spatial_edges(d, base_graph, edges)
    return edges, False


def adjacency(d: Decomposition) -> AdjacencyGraph:
    n = d.dimension
    if n > 3:
        raise UnsupportedDimension(f"adjacency is not available in dimension {n}")
    edges, certified = _graph_for(d, n)
    leaves = tuple(c.path for c in d.leaves())
    return AdjacencyGraph(leaves, frozenset(e for e in edges if len(e[0]) == n), certified)


# -- components ------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentDescription:
    cells: tuple
    formula: fm.Formula
    tree: tuple = field(default=())  # (cell, parent) pairs of a spanning tree rooted at cells[0]

    def witness(self, a: tuple, b: tuple) -> list[tuple]:
        """Adjacency path from a to b through the spanning tree."""
        parent = dict(self.tree)

        def up(x):
            chain = [x]
            while x in parent:
                x = parent[x]
                chain.append(x)
            return chain

        pa, pb = up(a), up(b)
        common = next(x for x in pa if x in set(pb))
        left = pa[:pa.index(common) + 1]
        right = pb[:pb.index(common)]
        return left + right[::-1]


def _spanning_tree(members: list, nbrs: dict) -> tuple:
    allowed = set(members)
    root = members[0]
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                tree.append((y, x))
                queue.append(y)
    return tuple(tree)


def components(f: fm.Formula, d: Decomposition, g: AdjacencyGraph | None = None) -> list[ComponentDescription]:
    if g is None:
        g = adjacency(d)
    leaves = tuple(c.path for c in d.leaves())
    if g.vertices != leaves:
        raise ValueError("adjacency graph does not belong to this decomposition")
    chosen = satisfying_cells(f, d)
    uf = UnionFind(chosen)
    keep = set(chosen)
    for a, b in sorted(g.edges):
        if a in keep and b in keep:
            uf.union(a, b)
    nbrs = g.neighbors()
    out = []
    for members in sorted(uf.groups()):
        formula = fm.Or(tuple(describe_cell(d, p) for p in members))
        out.append(ComponentDescription(tuple(members), formula, _spanning_tree(members, nbrs)))
    return out


@dataclass(frozen=True)
class ComponentReport:
    decomposition: Decomposition
    graph: AdjacencyGraph
    components: tuple


def connected_components(f: fm.Formula, variables: Sequence[str]) -> ComponentReport:
    """Decompose with derivative-closed families, build adjacency, and split into components."""
    from .cad import decompose_formula

    variables = tuple(variables)
    if len(variables) > 3:
        raise UnsupportedDimension(f"components are not available in dimension {len(variables)}")
    f = fm.with_variables(f, variables)
    d = decompose_formula(f, variables, thom=True)
    g = adjacency(d)
    return ComponentReport(d, g, tuple(components(f, d, g)))


def component_of(report: ComponentReport, path: tuple) -> int | None:
    for k, comp in enumerate(report.components):
        if path in comp.cells:
            return k
    return None

