"""Marching-squares isocontour extraction with polyline stitching.

Cells are classified by which corners exceed the isovalue; crossing points
are linearly interpolated on cell edges.  Shared edges between neighboring
cells evaluate the same interpolation expression on the same operands, so
matching endpoints are bitwise equal and stitching can join them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ScalarField2

# vertex values exactly equal to the isovalue are nudged before
# classification so no crossing point lands on a grid vertex
_TIE_EPS = 1e-12

# case -> list of (edge, edge) segments; corners bit order: a=BL, b=BR, c=TR, d=TL
# edges: 'b'ottom, 'r'ight, 't'op, 'l'eft; cases 5/10 resolved at runtime
_SEGMENT_TABLE = {
    0: [],
    1: [("l", "b")],
    2: [("b", "r")],
    3: [("l", "r")],
    4: [("r", "t")],
    6: [("b", "t")],
    7: [("l", "t")],
    8: [("t", "l")],
    9: [("b", "t")],
    11: [("r", "t")],
    12: [("l", "r")],
    13: [("b", "r")],
    14: [("l", "b")],
    15: [],
}


@dataclass(frozen=True)
class ContourSet:
    """Isocontour polylines in world coordinates."""

    polylines: tuple[np.ndarray, ...]
    isovalue: float

    def __post_init__(self):
        object.__setattr__(
            self, "polylines", tuple(np.asarray(p, dtype=np.float64) for p in self.polylines)
        )
        for p in self.polylines:
            if p.ndim != 2 or p.shape[1] != 2 or p.shape[0] < 2:
                raise ValueError("each polyline must be an (n>=2, 2) point array")

    @property
    def n_points(self) -> int:
        return sum(p.shape[0] for p in self.polylines)


def marching_squares(fld: ScalarField2, isovalue: float) -> ContourSet:
    """Extract isocontour polylines from a scalar field."""
    grid = fld.grid
    s = fld.values.copy()
    s[s == isovalue] += _TIE_EPS * abs(isovalue + 1.0)
    s2 = s.reshape(grid.ny, grid.nx)
    dx, dy = grid.dx, grid.dy

    segments: list[tuple[tuple[float, float], tuple[float, float]]] = []
    for j in range(grid.ny - 1):
        for i in range(grid.nx - 1):
            a = s2[j, i]
            b = s2[j, i + 1]
            c = s2[j + 1, i + 1]
            d = s2[j + 1, i]
            case = (
                (a > isovalue)
                | ((b > isovalue) << 1)
                | ((c > isovalue) << 2)
                | ((d > isovalue) << 3)
            )
            if case == 0 or case == 15:
                continue

            def edge_point(edge: str) -> tuple[float, float]:
                if edge == "b":
                    t = (isovalue - a) / (b - a)
                    return ((i + t) * dx, j * dy)
                if edge == "t":
                    t = (isovalue - d) / (c - d)
                    return ((i + t) * dx, (j + 1) * dy)
                if edge == "l":
                    t = (isovalue - a) / (d - a)
                    return (i * dx, (j + t) * dy)
                t = (isovalue - b) / (c - b)
                return ((i + 1) * dx, (j + t) * dy)

            if case in (5, 10):
                center_above = (a + b + c + d) / 4.0 > isovalue
                if (case == 5) == center_above:
                    pairs = [("b", "r"), ("t", "l")]
                else:
                    pairs = [("l", "b"), ("r", "t")]
            else:
                pairs = _SEGMENT_TABLE[case]
            for e0, e1 in pairs:
                segments.append((edge_point(e0), edge_point(e1)))

    return ContourSet(tuple(_stitch(segments)), isovalue)


def _stitch(segments) -> list[np.ndarray]:
    """Join segments sharing (bitwise equal) endpoints into polylines."""
    point_segs: dict[tuple[float, float], list[int]] = {}
    for k, (p0, p1) in enumerate(segments):
        point_segs.setdefault(p0, []).append(k)
        point_segs.setdefault(p1, []).append(k)

    used = [False] * len(segments)

    def walk(seg: int, start) -> list:
        points = [start]
        cur = start
        while True:
            used[seg] = True
            p0, p1 = segments[seg]
            cur = p1 if cur == p0 else p0
            points.append(cur)
            nxt = next((k for k in point_segs[cur] if not used[k]), None)
            if nxt is None:
                return points
            seg = nxt

    polylines = []
    # open chains first: start at endpoints that belong to a single segment
    for k, (p0, p1) in enumerate(segments):
        if used[k]:
            continue
        if len(point_segs[p0]) == 1:
            polylines.append(walk(k, p0))
        elif len(point_segs[p1]) == 1:
            polylines.append(walk(k, p1))
    # remaining segments form closed loops
    for k, (p0, _) in enumerate(segments):
        if not used[k]:
            polylines.append(walk(k, p0))
    return [np.array(p) for p in polylines]


def interpolate_at(fld: ScalarField2, x: float, y: float) -> float:
    """Bilinear field value at a world-coordinate point (test oracle aid)."""
    grid = fld.grid
    fx, fy = x / grid.dx, y / grid.dy
    i = min(int(fx), grid.nx - 2)
    j = min(int(fy), grid.ny - 2)
    tx, ty = fx - i, fy - j
    s2 = fld.as_2d()
    return float(
        s2[j, i] * (1 - tx) * (1 - ty)
        + s2[j, i + 1] * tx * (1 - ty)
        + s2[j + 1, i] * (1 - tx) * ty
        + s2[j + 1, i + 1] * tx * ty
    )
