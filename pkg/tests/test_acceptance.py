"""Acceptance criteria 1-10.

Each criterion prints one PASS/FAIL line with its measured time and budget.
Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""
from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cylindre.algebra import apply_shear, elementary_symmetric, find_shear, initial_form, newton_symmetrize
from cylindre.cad import decompose, family_signs, locate, matching_leaves, random_point
from cylindre.connectivity import component_of, connected_components
from cylindre.division import (generic_divide, generic_divide_via_roots, prepare, root_bound,
                               weierstrass_divide)
from cylindre.formula import evaluate_at, format_formula, parse_formula, parse_polynomial
from cylindre.oracle import grid_oracle
from cylindre.poly import Polynomial

from conftest import random_poly
from golden_cases import CASES, GOLDEN_DIR, invoke
from suites import BOX, CURATED, PLANE

SEED = 20240611


def division_suite(count=300):
    rng = random.Random(SEED)
    names = ("x1", "x2", "xn")
    out = []
    for _ in range(count):
        n = rng.randint(1, 3)
        variables = names[3 - n:]
        g = random_poly(rng, variables, max_deg=3, max_terms=5, height=10, last_deg=5)
        out.append((g, rng.randint(1, 4)))
    return out


def criterion_1():
    bad = 0
    for g, p in division_suite():
        res = generic_divide(g, p)
        if not (res.reassemble() - g.with_variables(res.divisor.variables)).is_zero():
            bad += 1
    return bad == 0, f"{bad} identity failures in 300 cases"


def criterion_2():
    bad = sum(generic_divide_via_roots(g, p) != generic_divide(g, p) for g, p in division_suite())
    return bad == 0, f"{bad} mismatches in 300 cases"


def criterion_3():
    rng = random.Random(SEED + 3)
    worst = 0.0
    bad = 0
    for _ in range(200):
        p = rng.randint(1, 5)
        v = [Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(p)]
        bound = float(root_bound(v))
        roots = np.roots([1.0] + [float(c) for c in v])
        top = max((abs(z) for z in roots), default=0.0)
        if bound > 0:
            worst = max(worst, top / bound)
        if top > bound * (1 + 1e-6):
            bad += 1
    return bad == 0, f"{bad} violations, max |root|/bound = {worst:.4f}"


def criterion_4():
    rng = random.Random(SEED + 4)
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        variables = ("x1", "x2", "xn")[3 - n:]
        xn = Polynomial.var(variables, "xn")
        p = rng.randint(1, 3)
        g = xn ** p
        for k in range(p):
            g = g + random_poly(rng, variables, max_deg=2, max_terms=2, last_deg=0) * xn ** k
        f = random_poly(rng, variables, max_deg=3, max_terms=5, last_deg=6)
        w = prepare(g)
        d = weierstrass_divide(f, w)
        k, q, rs = d.cleared()
        rem = sum((r * xn ** (p - j) for j, r in enumerate(rs, start=1)), Polynomial.zero(variables))
        ok = all(r.degree("xn") <= 0 for r in rs)
        ok = ok and (w.guard ** k * f - q * g - rem).is_zero()
        again = weierstrass_divide(q * g + rem, w)
        ok = ok and again.cleared() == (k, q, rs)
        bad += not ok
    return bad == 0, f"{bad} failures in 100 divisions"


def criterion_5():
    rng = random.Random(SEED + 5)
    circle = parse_polynomial("x^2 + y^2 - 1", PLANE)
    d = decompose([circle], PLANE)
    thom = decompose([circle], PLANE, thom=True)
    shape = len(d.leaves()) == 13 and d.stack_sizes(2) == [1, 3, 5, 3, 1]
    probes = bad = 0
    for c in d.leaves():
        if c.path[-1] % 2:
            continue
        for _ in range(20):
            pt = random_point(d, c.path, rng)
            probes += 1
            ok = family_signs(d, pt) == c.signs and locate(d, pt) == c.path
            ok = ok and len(matching_leaves(thom, pt)) == 1
            bad += not ok
    return shape and bad == 0, f"13 cells {shape}, {bad} failures over {probes} sector probes"


def _probe_check(f, report, rng, count=200):
    bad = 0
    d = report.decomposition
    for _ in range(count):
        pt = (Fraction(rng.randint(-400, 400), 100), Fraction(rng.randint(-400, 400), 100))
        k = component_of(report, locate(d, pt))
        for j, comp in enumerate(report.components):
            bad += evaluate_at(comp.formula, pt) != (j == k)
        bad += evaluate_at(f, pt) != (k is not None)
    return bad


def criterion_6():
    rng = random.Random(SEED + 6)
    notes = []
    for name, text, expected in CURATED:
        f = parse_formula(text, PLANE)
        report = connected_components(f, PLANE)
        got = len(report.components)
        oracle = grid_oracle(f, BOX, Fraction(1, 50))
        bad = _probe_check(f, report, rng)
        if got != expected or oracle != expected or bad:
            notes.append(f"{name}: cad {got}, oracle {oracle}, expected {expected}, probe errors {bad}")
    return not notes, "; ".join(notes) or f"{len(CURATED)} sets agree"


def criterion_7():
    notes = []
    total = 0
    for name, text, _ in CURATED:
        report = connected_components(parse_formula(text, PLANE), PLANE)
        for comp in report.components:
            total += 1
            code, out, err = invoke(["components", "--vars", "x,y", "--formula", format_formula(comp.formula)])
            count = json.loads(out.splitlines()[0])["count"] if code == 0 else None
            if count != 1:
                notes.append(f"{name}: exit {code}, count {count} {err.strip()}")
    return not notes, "; ".join(notes) or f"{total} descriptions each give 1 component"


def criterion_8():
    rng = random.Random(SEED + 8)
    variables = ("x1", "x2", "x3")
    bad = 0
    for _ in range(100):
        polys = []
        while len(polys) < rng.randint(1, 3):
            g = random_poly(rng, variables, max_deg=3, max_terms=4)
            if not g.is_zero():
                polys.append(g)
        s = find_shear(polys)
        for g in polys:
            order = initial_form(g)[0]
            h = apply_shear(g, s).substitute({"x1": 0, "x2": 0})
            if h.is_zero() or initial_form(h)[0] != order:
                bad += 1
    return bad == 0, f"{bad} non-regular results"


def criterion_9():
    rng = random.Random(SEED + 9)
    bad = 0
    for _ in range(100):
        p = rng.randint(1, 3)
        v = tuple(f"v{j}" for j in range(1, p + 1))
        e = tuple(f"e{j}" for j in range(1, p + 1))
        h = random_poly(rng, e, max_deg=3, max_terms=4)
        elem = {ej: elementary_symmetric(v, v, j) for j, ej in enumerate(e, start=1)}
        f = h.compose(elem) if not h.is_zero() else Polynomial.zero(v)
        g = newton_symmetrize(f, v)
        back = g.compose(dict(zip(g.variables, elem.values()))) if not g.is_zero() else Polynomial.zero(v)
        bad += not (back - f).is_zero()
    return bad == 0, f"{bad} failures"


def criterion_10():
    bad = []
    for name, argv in sorted(CASES.items()):
        first, second = invoke(argv), invoke(argv)
        golden = (GOLDEN_DIR / f"{name}.jsonl").read_text(encoding="utf-8")
        if first != second or first[1] != golden:
            bad.append(name)
    return not bad, f"{len(CASES) - len(bad)}/{len(CASES)} golden files stable" + (f", unstable: {bad}" if bad else "")


CRITERIA = [
    (1, criterion_1, 30.0),
    (2, criterion_2, 30.0),
    (3, criterion_3, 5.0),
    (4, criterion_4, 10.0),
    (5, criterion_5, 60.0),
    (6, criterion_6, 120.0),
    (7, criterion_7, 120.0),
    (8, criterion_8, 5.0),
    (9, criterion_9, 5.0),
    (10, criterion_10, 60.0),
]


def evaluate(fn, budget):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed <= budget
    return passed, f"{detail}; {elapsed:.2f}s of {budget:.0f}s"


@pytest.mark.parametrize("number,fn,budget", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, fn, budget, capsys):
    passed, detail = evaluate(fn, budget)
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if passed else 'FAIL'} ({detail})")
    assert passed, detail


if __name__ == "__main__":
    failures = 0
    for number, fn, budget in CRITERIA:
        passed, detail = evaluate(fn, budget)
        failures += not passed
        print(f"CRITERION {number}: {'PASS' if passed else 'FAIL'} ({detail})", flush=True)
    sys.exit(1 if failures else 0)
