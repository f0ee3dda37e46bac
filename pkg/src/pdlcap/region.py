"""
Parameter-plane scans: classification maps, superadditivity regions and
the zero level of ``w_n``.

Grid cells sit at ``((i + 1/2)/res, (j + 1/2)/res)`` so no cell lands on a
classification boundary.  ``i`` indexes ``p_h`` and ``j`` indexes ``p_v``.
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams, Classification, classify
from .closedform import benefit_n, n_threshold, solve_q1, w_n
from .errors import ValidationError

MAX_RESOLUTION = 2000
ROOT_TOL = 1e-12
WIDTH_TOL = 1e-10


@dataclass
class RegionGrid:
    resolution: int
    n_list: list[int]
    centers: np.ndarray
    classification: np.ndarray  # (res, res) of Classification
    w: dict[int, np.ndarray] = field(default_factory=dict)
    benefit: dict[int, np.ndarray] = field(default_factory=dict)
    superadditive: dict[int, np.ndarray] = field(default_factory=dict)

    def cells(self):
        """Yield ``(p_h, p_v, classification, {n: (w_n, benefit, flag)})`` row-major."""
        for i, ph in enumerate(self.centers):
            for j, pv in enumerate(self.centers):
                per_n = {
                    n: (float(self.w[n][i, j]), float(self.benefit[n][i, j]), bool(self.superadditive[n][i, j]))
                    for n in self.n_list
                }
                yield float(ph), float(pv), self.classification[i, j], per_n


@dataclass
class BoundaryCurve:
    n: int
    points: np.ndarray  # (m, 2) rows of (p_h, p_v)
    brackets: np.ndarray  # (m, 2) sample values of the varying coordinate around each root


def _cell_values(ph: float, pv: float, n_list: list[int]):
    params = ChannelParams(ph, pv)
    cls = classify(params)
    sol = solve_q1(params)
    eligible = cls not in (Classification.ANTIDEGRADABLE, Classification.BOTH)
    out = []
    for n in n_list:
        w = w_n(params, n)
        b = benefit_n(params, sol, n) if n >= 2 else 0.0
        out.append((w, b, eligible and w > 0 and b > 0))
    return cls, out


def _scan_row(args):
    i, res, n_list = args
    ph = (i + 0.5) / res
    return [_cell_values(ph, (j + 0.5) / res, n_list) for j in range(i + 1)]


def scan(resolution: int, n_list, threads: int | None = 1) -> RegionGrid:
    """Evaluate classification, ``w_n``, benefit and verdict on every cell.

    Only cells with ``p_h >= p_v`` are computed; the rest are mirrored, which
    makes the ``p_h <-> p_v`` symmetry exact.  ``threads`` > 1 spreads rows
    over a process pool; results are keyed by row index.
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValidationError("n_list must not be empty")
    if any(n < 1 for n in n_list):
        raise ValidationError(f"all n must be >= 1, got {n_list}")
    if not 2 <= resolution <= MAX_RESOLUTION:
        raise ValidationError(f"resolution must be in [2, {MAX_RESOLUTION}], got {resolution}")
    res = int(resolution)
    jobs = [(i, res, n_list) for i in range(res)]
    if threads and threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_scan_row, jobs, chunksize=max(1, res // (4 * threads))))
    else:
        rows = [_scan_row(job) for job in jobs]

    classes = np.empty((res, res), dtype=object)
    w = {n: np.zeros((res, res)) for n in n_list}
    ben = {n: np.zeros((res, res)) for n in n_list}
    sup = {n: np.zeros((res, res), dtype=bool) for n in n_list}
    for i, row in enumerate(rows):
        for j, (cls, vals) in enumerate(row):
            for a, b in ((i, j), (j, i)):
                classes[a, b] = cls
                for n, (wv, bv, flag) in zip(n_list, vals):
                    w[n][a, b] = wv
                    ben[n][a, b] = bv
                    sup[n][a, b] = flag
    centers = (np.arange(res) + 0.5) / res
    return RegionGrid(res, n_list, centers, classes, w, ben, sup)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def grid_to_csv(grid: RegionGrid) -> str:
    buf = io.StringIO()
    header = ["p_h", "p_v", "classification"]
    for n in grid.n_list:
        header += [f"w_{n}", f"benefit_{n}", f"superadditive_{n}"]
    buf.write(",".join(header) + "\n")
    for ph, pv, cls, per_n in grid.cells():
        row = [_fmt(ph), _fmt(pv), cls.value]
        for n in grid.n_list:
            wv, bv, flag = per_n[n]
            row += [_fmt(wv), _fmt(bv), "1" if flag else "0"]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def grid_to_dict(grid: RegionGrid) -> dict:
    cells = []
    for ph, pv, cls, per_n in grid.cells():
        cell = {"p_h": ph, "p_v": pv, "classification": cls.value}
        for n in grid.n_list:
            wv, bv, flag = per_n[n]
            cell[f"w_{n}"] = wv
            cell[f"benefit_{n}"] = bv
            cell[f"superadditive_{n}"] = flag
        cells.append(cell)
    return {"resolution": grid.resolution, "n_list": list(grid.n_list), "cells": cells}


def to_json(obj) -> str:
    """Serialize with shortest round-trip float repr; re-serializing parsed output is byte-identical."""
    return json.dumps(obj, indent=2) + "\n"


def _ray_samples(count: int) -> np.ndarray:
    edge = [10.0**-k for k in range(2, 8)]
    pts = np.concatenate([np.linspace(0.0, 1.0, count + 1)[1:-1], edge, [1.0 - e for e in edge]])
    return np.unique(pts)


def _bisect(f, a: float, b: float, fa: float) -> float:
    while b - a > WIDTH_TOL:
        m = 0.5 * (a + b)
        fm = f(m)
        if abs(fm) < ROOT_TOL:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _ray_roots(n: int, pv: float, samples: np.ndarray):
    def f(ph):
        return w_n(ChannelParams(ph, pv), n)

    vals = np.array([f(x) for x in samples])
    roots = []
    for k in range(len(samples) - 1):
        a, b = samples[k], samples[k + 1]
        fa, fb = vals[k], vals[k + 1]
        if fa == 0.0:
            roots.append((a, a, a))
        elif fa * fb < 0:
            roots.append((_bisect(f, a, b, fa), a, b))
    return roots


def boundary(n: int, ray_count: int = 50, samples: int = 200) -> BoundaryCurve:
    """Zero level of ``w_n`` along horizontal rays, mirrored for vertical rays.

    Each ray ``p_v = (j + 1/2)/ray_count`` is sampled in ``p_h``; every sign
    change is bisected until ``|w_n| < 1e-12`` or the bracket is narrower than
    1e-10.  Rays without a sign change contribute nothing.
    """
    if n < 2:
        raise ValidationError(f"boundary needs n >= 2, got {n}")
    if ray_count < 1:
        raise ValidationError(f"ray_count must be >= 1, got {ray_count}")
    xs = _ray_samples(samples)
    pts, brackets = [], []
    for j in range(ray_count):
        pv = (j + 0.5) / ray_count
        for root, a, b in _ray_roots(n, pv, xs):
            pts.append((root, pv))
            brackets.append((a, b))
    mirrored = [(pv, ph) for ph, pv in pts]
    points = np.array(pts + mirrored, dtype=float).reshape(-1, 2)
    br = np.array(brackets + brackets, dtype=float).reshape(-1, 2)
    return BoundaryCurve(int(n), points, br)


def boundary_to_csv(curve: BoundaryCurve) -> str:
    lines = ["n,p_h,p_v"]
    lines += [f"{curve.n},{_fmt(ph)},{_fmt(pv)}" for ph, pv in curve.points]
    return "\n".join(lines) + "\n"


def boundary_to_dict(curve: BoundaryCurve) -> dict:
    return {"n": curve.n, "points": [[float(a), float(b)] for a, b in curve.points]}


# The limiting region {0 < p_min < 1/2 < p_maj < 1} is two open squares.
_LIMIT_SQUARES = ((0.5, 1.0, 0.0, 0.5), (0.0, 0.5, 0.5, 1.0))


def _distance_to_square_boundary(x: float, y: float, sq) -> float:
    x0, x1, y0, y1 = sq
    if x0 <= x <= x1 and y0 <= y <= y1:
        return min(x - x0, x1 - x, y - y0, y1 - y)
    dx = max(x0 - x, 0.0, x - x1)
    dy = max(y0 - y, 0.0, y - y1)
    return math.hypot(dx, dy)


def distance_to_limit_boundary(ph: float, pv: float) -> float:
    """Euclidean distance from a point to the edge of the neither-degradable-nor-antidegradable region."""
    return min(_distance_to_square_boundary(ph, pv, sq) for sq in _LIMIT_SQUARES)


def limit_distance(curve: BoundaryCurve) -> float:
    """Largest distance from any point of the zero curve to the limiting region's edge."""
    if len(curve.points) == 0:
        return float("nan")
    return max(distance_to_limit_boundary(ph, pv) for ph, pv in curve.points)


SAMPLE_POINTS = ((0.7, 0.2), (0.8, 0.4), (0.6, 0.1))


@dataclass
class ConvergenceRow:
    n: int
    max_distance: float
    baseline: bool
    samples: list[dict]


def convergence_report(n_list, ray_count: int = 50) -> list[ConvergenceRow]:
    """How far the ``w_n = 0`` curve sits from the limiting region, per ``n``.

    ``n = 2`` is flagged as a baseline row: its zero set is the straight
    line ``p_h + p_v = 1`` and is not expected to approach the limit.
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValidationError("n_list must not be empty")
    if n_list != sorted(n_list):
        raise ValidationError(f"n_list must be ascending, got {n_list}")
    rows = []
    for n in n_list:
        d = limit_distance(boundary(n, ray_count))
        samples = []
        for ph, pv in SAMPLE_POINTS:
            params = ChannelParams(ph, pv)
            samples.append({"p_h": ph, "p_v": pv, "n0": n_threshold(params), "w_n": w_n(params, n)})
        rows.append(ConvergenceRow(n, d, n == 2, samples))
    return rows


def default_threads() -> int:
    return os.cpu_count() or 1
