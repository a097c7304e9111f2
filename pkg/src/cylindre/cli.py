"""Command line entry point.

Every command prints JSON Lines: a summary object carrying the ``schema``
field, followed by one object per item (cells, components). Exit codes:
0 success, 1 input error, 2 unsupported dimension, 3 cell limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import formula as fm
from . import serialize as ser
from .algebra import apply_shear, find_shear, initial_form
from .cad import CellLimitExceeded, decompose
from .connectivity import UnsupportedDimension, connected_components
from .division import generic_divide, generic_divide_via_roots, prepare, root_bound, weierstrass_divide
from .oracle import grid_oracle, grid_mask, write_ppm
from .poly import Polynomial

COMMANDS = ("components", "decompose", "divide", "prepare", "shear", "root-bound", "oracle")
_VALUE_FLAGS = ("--vars", "--formula", "--poly", "--degree", "--coeffs", "--box",
                "--resolution", "--output", "--method", "--ppm")


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cylindre", description="Cylindrical decomposition and division toolkit.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("problem", nargs="?", help="JSON problem file; flags override its fields")
    p.add_argument("--vars", help="comma separated variable order, e.g. x,y")
    p.add_argument("--formula")
    p.add_argument("--poly", action="append", help="polynomial (repeatable)")
    p.add_argument("--degree", type=int)
    p.add_argument("--coeffs", help="comma separated rationals v1,...,vp")
    p.add_argument("--box", help="lo1,hi1,lo2,hi2,...")
    p.add_argument("--resolution")
    p.add_argument("--auto-shear", action="store_true")
    p.add_argument("--approx", action="store_true", help="add float approximations of samples")
    p.add_argument("--thom", action="store_true", help="close families under differentiation")
    p.add_argument("--method", choices=("long", "roots"), default=None)
    p.add_argument("--ppm", help="oracle only: write the marked grid as a PPM image")
    p.add_argument("--output")
    return p


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Join value flags with their values so that values like "-3,2" survive argparse."""
    out = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _load_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read problem file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("problem file must hold a JSON object")
    return data


def _settings(args: argparse.Namespace) -> dict:
    cfg = _load_problem(args.problem) if args.problem else {}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    for key in ("vars", "formula", "poly", "degree", "coeffs", "box", "resolution", "method"):
        v = getattr(args, key)
        if v is not None:
            cfg[key] = v
    for key in ("auto_shear", "approx", "thom"):
        if getattr(args, key):
            cfg[key] = True
    return cfg


def _list(value, what: str) -> list[str]:
    if value is None:
        raise InputError(f"missing {what}")
    if isinstance(value, str):
        items = [s.strip() for s in value.split(",")]
    else:
        items = [str(s).strip() for s in value]
    if not items or any(not s for s in items):
        raise InputError(f"malformed {what}: {value!r}")
    return items


def _variables(cfg: dict) -> tuple:
    names = _list(cfg.get("vars"), "--vars")
    if len(set(names)) != len(names):
        raise InputError("duplicate variable names")
    for v in names:
        if not v.isidentifier() or v in ("and", "or", "not"):
            raise InputError(f"bad variable name {v!r}")
    return tuple(names)


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _polys(cfg: dict, variables) -> list[Polynomial]:
    raw = cfg.get("poly")
    if raw is None:
        raise InputError("missing --poly")
    if isinstance(raw, str):
        raw = [raw]
    return [fm.parse_polynomial(s, variables) for s in raw]


def _formula(cfg: dict, variables) -> fm.Formula:
    if cfg.get("formula") is None:
        raise InputError("missing --formula")
    return fm.parse_formula(cfg["formula"], variables)


def _head(command: str, **fields) -> dict:
    out = {"schema": ser.SCHEMA, "command": command}
    out.update(fields)
    return out


# -- commands ---------------------------------------------------------------

def cmd_components(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    if len(variables) > 3:
        raise UnsupportedDimension(f"components supports at most 3 variables, got {len(variables)}")
    f = _formula(cfg, variables)
    extra = {}
    if cfg.get("auto_shear"):
        polys = fm.polynomials(f) or [Polynomial.var(variables, variables[-1])]
        s = find_shear(polys)
        f = fm.map_polys(f, lambda p: apply_shear(p, s))
        extra = {"shear": list(s.nu), "coordinates": "sheared"}
    report = connected_components(f, variables)
    d = report.decomposition
    head = _head("components", variables=list(variables), formula=fm.format_formula(f),
                 count=len(report.components), cells=len(d.leaves()),
                 certified=report.graph.certified, **extra)
    return [head] + [ser.component(k, c) for k, c in enumerate(report.components)]


def cmd_decompose(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    if cfg.get("formula") is not None:
        polys = fm.polynomials(_formula(cfg, variables))
    else:
        polys = _polys(cfg, variables)
    d = decompose(polys, variables, thom=bool(cfg.get("thom")))
    head = _head("decompose", inputs=[ser.poly(p) for p in d.inputs], **ser.decomposition_summary(d))
    approx = bool(cfg.get("approx"))
    return [head] + [ser.cell(c, approx, d.input_signs[c.path], d.variables) for c in d.leaves()]


def cmd_divide(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    polys = _polys(cfg, variables)
    if len(polys) != 1:
        raise InputError("divide takes exactly one --poly")
    p = cfg.get("degree")
    if p is None:
        raise InputError("missing --degree")
    try:
        p = int(p)
    except (TypeError, ValueError):
        raise InputError(f"bad degree {p!r}") from None
    if p < 1:
        raise InputError("--degree must be at least 1")
    method = cfg.get("method") or "long"
    res = (generic_divide_via_roots if method == "roots" else generic_divide)(polys[0], p)
    return [_head("divide", variables=list(res.divisor.variables), method=method, degree=p,
                  divisor=ser.poly(res.divisor), quotient=ser.poly(res.quotient),
                  remainder=[ser.poly(h) for h in res.remainder_coeffs])]


def cmd_prepare(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    polys = _polys(cfg, variables)
    if len(polys) not in (1, 2):
        raise InputError("prepare takes the divisor and an optional dividend as --poly")
    w = prepare(polys[0])
    head = _head("prepare", variables=list(variables), main=w.main_variable, degree=w.degree,
                 guard=ser.poly(w.guard), unit=str(w.unit),
                 monic=[str(r) for r in w.coefficients])
    if len(polys) == 2:
        div = weierstrass_divide(polys[1], w)
        k, q, rs = div.cleared()
        head["division"] = {
            "dividend": ser.poly(polys[1]),
            "quotient": str(div.quotient),
            "remainder": [str(r) for r in div.remainder],
            "clearing_power": k,
            "cleared_quotient": ser.poly(q),
            "cleared_remainder": [ser.poly(r) for r in rs],
        }
    return [head]


def cmd_shear(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    polys = _polys(cfg, variables)
    s = find_shear(polys)
    sheared = [apply_shear(g, s) for g in polys]
    return [_head("shear", variables=list(variables), nu=list(s.nu),
                  orders=[initial_form(g)[0] for g in polys],
                  sheared=[ser.poly(g) for g in sheared])]


def cmd_root_bound(cfg: dict) -> list[dict]:
    coeffs = [_rational(c) for c in _list(cfg.get("coeffs"), "--coeffs")]
    return [_head("root-bound", coeffs=[ser.rational(c) for c in coeffs],
                  bound=ser.rational(root_bound(coeffs)))]


def cmd_oracle(cfg: dict) -> list[dict]:
    variables = _variables(cfg)
    f = _formula(cfg, variables)
    nums = [_rational(v) for v in _list(cfg.get("box"), "--box")]
    if len(nums) != 2 * len(variables):
        raise InputError("--box needs a low and a high value per variable")
    box = [(nums[2 * i], nums[2 * i + 1]) for i in range(len(variables))]
    res = _rational(cfg.get("resolution", "1/50"))
    count = grid_oracle(f, box, res)
    if cfg.get("ppm"):
        write_ppm(grid_mask(f, box, res), cfg["ppm"])
    return [_head("oracle", variables=list(variables), formula=fm.format_formula(f),
                  box=[[ser.rational(a), ser.rational(b)] for a, b in box],
                  resolution=ser.rational(res), count=count)]


HANDLERS = {
    "components": cmd_components,
    "decompose": cmd_decompose,
    "divide": cmd_divide,
    "prepare": cmd_prepare,
    "shear": cmd_shear,
    "root-bound": cmd_root_bound,
    "oracle": cmd_oracle,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
        cfg = _settings(args)
        if args.ppm:
            cfg["ppm"] = args.ppm
        lines = HANDLERS[args.command](cfg)
    except UnsupportedDimension as exc:
        print(f"cylindre: unsupported dimension: {exc}", file=stderr)
        return 2
    except CellLimitExceeded as exc:
        print(f"cylindre: {exc}", file=stderr)
        return 3
    except (InputError, ValueError, ArithmeticError) as exc:
        print(f"cylindre: error: {exc}", file=stderr)
        return 1
    text = "".join(ser.dumps(obj) + "\n" for obj in lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
