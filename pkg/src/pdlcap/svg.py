"""Self-contained SVG renderings of region grids and boundary curves (800x800, inline styles)."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .channel import Classification
from .region import BoundaryCurve, RegionGrid

SIZE = 800

COLORS = {
    Classification.DEGRADABLE: "#b03a2e",
    Classification.ANTIDEGRADABLE: "#239b56",
    Classification.BOTH: "#000000",
    Classification.NEITHER: "#ffffff",
}
SUPERADDITIVE_COLOR = "#f4d03f"
DASHES = ["2,3", "8,4", "12,4,2,4", "16,6", "4,4,1,4", "20,4"]


def _xy(ph: float, pv: float) -> tuple[float, float]:
    return ph * SIZE, (1.0 - pv) * SIZE


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" style="fill:#ffffff;stroke:none"/>',
    ]


def zero_contour(xs: np.ndarray, values: np.ndarray) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Marching-squares segments of the zero level of ``values[i, j]`` sampled at ``(xs[i], xs[j])``."""
    segs = []
    pos = values > 0
    m = len(xs)
    for i in range(m - 1):
        for j in range(m - 1):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            flags = [pos[c] for c in corners]
            if all(flags) or not any(flags):
                continue
            pts = []
            for (a, b) in zip(corners, corners[1:] + corners[:1]):
                if pos[a] != pos[b]:
                    va, vb = values[a], values[b]
                    t = va / (va - vb) if va != vb else 0.5
                    x = xs[a[0]] + t * (xs[b[0]] - xs[a[0]])
                    y = xs[a[1]] + t * (xs[b[1]] - xs[a[1]])
                    pts.append((float(x), float(y)))
            for k in range(0, len(pts) - 1, 2):
                segs.append((pts[k], pts[k + 1]))
    return segs


def region_svg(grid: RegionGrid) -> str:
    """Cells colored by classification; superadditive cells (largest n) in yellow; one dashed zero contour of ``w_n`` per n."""
    res = grid.resolution
    cell = SIZE / res
    top_n = max(grid.n_list)
    out = _header(f"classification and w_n contours, n in {grid.n_list}")
    for i, ph in enumerate(grid.centers):
        for j, pv in enumerate(grid.centers):
            color = COLORS[grid.classification[i, j]]
            if grid.superadditive[top_n][i, j]:
                color = SUPERADDITIVE_COLOR
            x, y = _xy(ph, pv)
            out.append(
                f'<rect x="{x - cell / 2:.3f}" y="{y - cell / 2:.3f}" width="{cell:.3f}" height="{cell:.3f}" '
                f'style="fill:{color};stroke:none"/>'
            )
    for idx, n in enumerate(grid.n_list):
        segs = zero_contour(grid.centers, grid.w[n])
        d = " ".join(
            f"M{_xy(*a)[0]:.3f},{_xy(*a)[1]:.3f} L{_xy(*b)[0]:.3f},{_xy(*b)[1]:.3f}" for a, b in segs
        )
        dash = DASHES[idx % len(DASHES)]
        out.append(
            f'<path class="contour" data-n="{n}" d="{d}" '
            f'style="fill:none;stroke:#1a5276;stroke-width:2;stroke-dasharray:{dash}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def boundary_svg(curves: list[BoundaryCurve]) -> str:
    out = _header("w_n = 0 boundary points")
    for sq in ((0.5, 0.0), (0.0, 0.5)):
        x, y = _xy(sq[0], sq[1] + 0.5)
        out.append(
            f'<rect x="{x:.3f}" y="{y:.3f}" width="{SIZE / 2}" height="{SIZE / 2}" '
            f'style="fill:#f2f3f4;stroke:#7f8c8d;stroke-width:1"/>'
        )
    for curve in curves:
        out.append(f'<g class="boundary" data-n="{curve.n}" style="fill:#1a5276;stroke:none">')
        for ph, pv in curve.points:
            x, y = _xy(ph, pv)
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
