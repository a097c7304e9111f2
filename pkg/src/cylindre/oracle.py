"""Grid rasterization oracle for counting connected components.

Each grid box is marked when outward-rounded interval evaluation cannot rule
out that the formula holds somewhere in it. Marked boxes are labeled with
face connectivity. This over-approximates the set, so it is only trusted on
inputs where the components are well separated at the chosen resolution.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import ndimage

from . import formula as fm
from .poly import Polynomial

_NEG, _POS = -np.inf, np.inf


def _down(x):
    return np.nextafter(np.nextafter(x, _NEG), _NEG)


def _up(x):
    return np.nextafter(np.nextafter(x, _POS), _POS)


def _fraction_interval(c: Fraction) -> tuple[float, float]:
    f = float(c)
    if Fraction(f) == c:
        return f, f
    return float(_down(f)), float(_up(f))


def _ipow(lo, hi, k: int):
    if k == 1:
        return lo, hi
    a, b = _down(np.power(lo, k)), _up(np.power(lo, k))
    c, d = _down(np.power(hi, k)), _up(np.power(hi, k))
    low = np.minimum(a, c)
    high = np.maximum(b, d)
    if k % 2 == 0:
        low = np.where((lo < 0) & (hi > 0), 0.0, np.maximum(low, 0.0))
    return low, high


def _imul(alo, ahi, blo, bhi):
    p = [alo * blo, alo * bhi, ahi * blo, ahi * bhi]
    return _down(np.minimum.reduce(p)), _up(np.maximum.reduce(p))


def poly_interval(p: Polynomial, axes: Sequence[tuple]) -> tuple[np.ndarray, np.ndarray]:
    """Enclosure of p over every grid box; ``axes[i]`` = (lo, hi) arrays shaped for broadcasting."""
    shape = np.broadcast_shapes(*(a[0].shape for a in axes))
    lo = np.zeros(shape)
    hi = np.zeros(shape)
    for exp, c in p.terms.items():
        clo, chi = _fraction_interval(c)
        tlo = np.full(shape, clo)
        thi = np.full(shape, chi)
        for i, k in enumerate(exp):
            if k:
                plo, phi = _ipow(axes[i][0], axes[i][1], k)
                tlo, thi = _imul(tlo, thi, plo, phi)
        lo = _down(lo + tlo)
        hi = _up(hi + thi)
    return lo, hi


def _possible(f: fm.Formula, axes, cache: dict) -> np.ndarray:
    if isinstance(f, fm.Atom):
        if f.poly not in cache:
            cache[f.poly] = poly_interval(f.poly, axes)
        lo, hi = cache[f.poly]
        rel = f.rel
        if rel == "=":
            return (lo <= 0) & (hi >= 0)
        if rel == "!=":
            return ~((lo == 0) & (hi == 0))
        if rel == "<":
            return lo < 0
        if rel == "<=":
            return lo <= 0
        if rel == ">":
            return hi > 0
        return hi >= 0
    parts = [_possible(g, axes, cache) for g in f.items]
    shape = np.broadcast_shapes(*(a[0].shape for a in axes))
    if isinstance(f, fm.And):
        out = np.ones(shape, dtype=bool)
        for q in parts:
            out &= q
    else:
        out = np.zeros(shape, dtype=bool)
        for q in parts:
            out |= q
    return out


def grid_mask(f: fm.Formula, box: Sequence[tuple], resolution) -> np.ndarray:
    resolution = Fraction(resolution)
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    box = [(Fraction(a), Fraction(b)) for a, b in box]
    if not box or any(b <= a for a, b in box):
        raise ValueError("degenerate box")
    n = len(box)
    axes = []
    for i, (a, b) in enumerate(box):
        count = math.ceil((b - a) / resolution)
        edges = [a + resolution * j for j in range(count)] + [b]
        lo = np.array([_fraction_interval(e)[0] for e in edges[:-1]])
        hi = np.array([_fraction_interval(e)[1] for e in edges[1:]])
        shape = [1] * n
        shape[i] = count
        axes.append((lo.reshape(shape), hi.reshape(shape)))
    mask = _possible(f, axes, {})
    full = tuple(len(a[0].ravel()) for a in axes)
    return np.broadcast_to(mask, full).copy()


def grid_oracle(f: fm.Formula, box: Sequence[tuple], resolution) -> int:
    """Number of face-connected regions of possibly satisfying grid boxes."""
    mask = grid_mask(f, box, resolution)
    structure = ndimage.generate_binary_structure(mask.ndim, 1)
    _, count = ndimage.label(mask, structure=structure)
    return int(count)


def write_ppm(mask: np.ndarray, path: str) -> None:
    """Debugging aid: dump a 2-D mask as a binary PPM (marked boxes black, y up)."""
    if mask.ndim != 2:
        raise ValueError("only 2-D masks can be drawn")
    img = np.where(mask.T[::-1], 0, 255).astype(np.uint8)
    rgb = np.repeat(img[:, :, None], 3, axis=2)
    with open(path, "wb") as fh:
        fh.write(f"P6 {rgb.shape[1]} {rgb.shape[0]} 255\n".encode())
        fh.write(rgb.tobytes())
