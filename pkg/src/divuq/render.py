"""Colormapped raster rendering, binary PPM output, and contour overlays.

Rasters are (height, width, 3) uint8 arrays; raster row k is grid row
j = k (PPM row 0 is written first, i.e. at the top of the image).  Scalar
fields render one pixel per vertex, crossing-probability fields one pixel
per cell.  All output is byte-deterministic.
"""

from __future__ import annotations

import numpy as np

from .grid import ScalarField2
from .lcp import LcpField

# perceptually ordered blue -> yellow -> red diverging table
DEFAULT_LUT = np.array(
    [
        (49, 54, 149),
        (62, 94, 168),
        (81, 131, 187),
        (110, 166, 206),
        (144, 195, 221),
        (178, 221, 235),
        (212, 237, 244),
        (236, 248, 226),
        (255, 254, 190),
        (254, 235, 161),
        (254, 210, 131),
        (253, 179, 102),
        (248, 140, 81),
        (239, 99, 63),
        (221, 61, 45),
        (194, 28, 39),
        (165, 0, 38),
    ],
    dtype=np.uint8,
)


def load_lut(path) -> np.ndarray:
    """Read a lookup table: one 'r g b' line (0-255) per control point."""
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'r g b', got {line!r}")
            rgb = [int(p) for p in parts]
            if any(c < 0 or c > 255 for c in rgb):
                raise ValueError(f"{path}:{lineno}: components must be in 0..255")
            rows.append(rgb)
    if len(rows) < 2:
        raise ValueError(f"{path}: lookup table needs at least 2 entries")
    return np.array(rows, dtype=np.uint8)


def render_colormap(fld, value_range: tuple[float, float], lut: np.ndarray | None = None) -> np.ndarray:
    """Map a ScalarField2 (per vertex) or LcpField (per cell) to RGB.

    Values are clamped to [lo, hi], normalized, and interpolated linearly
    through the lookup table.
    """
    lo, hi = value_range
    if not lo < hi:
        raise ValueError(f"range must satisfy lo < hi, got ({lo}, {hi})")
    lut = DEFAULT_LUT if lut is None else np.asarray(lut, dtype=np.uint8)
    if isinstance(fld, LcpField):
        values = fld.as_2d()
    elif isinstance(fld, ScalarField2):
        values = fld.as_2d()
    else:
        raise TypeError(f"cannot render {type(fld).__name__}")

    t = np.clip((values - lo) / (hi - lo), 0.0, 1.0)
    pos = t * (len(lut) - 1)
    i0 = np.minimum(pos.astype(np.intp), len(lut) - 2)
    frac = (pos - i0)[..., None]
    color = lut[i0] * (1.0 - frac) + lut[i0 + 1] * frac
    return np.floor(color + 0.5).astype(np.uint8)


def encode_ppm(raster: np.ndarray) -> bytes:
    """Binary PPM (P6, 8-bit): header then raw RGB rows, row 0 first."""
    raster = np.asarray(raster, dtype=np.uint8)
    if raster.ndim != 3 or raster.shape[2] != 3:
        raise ValueError("raster must have shape (height, width, 3)")
    h, w = raster.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + raster.tobytes()


def write_ppm(raster: np.ndarray, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_ppm(raster))


def read_ppm(path) -> np.ndarray:
    """Inverse of write_ppm for the exact header layout we emit."""
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P6" or parts[2] != b"255":
        raise ValueError(f"{path}: not a P6 PPM written by this package")
    w, h = (int(x) for x in parts[1].split())
    pixels = np.frombuffer(parts[3], dtype=np.uint8, count=h * w * 3)
    return pixels.reshape(h, w, 3).copy()


def _bresenham(x0: int, y0: int, x1: int, y1: int):
    """Integer pixel coordinates of the segment (x0,y0)-(x1,y1)."""
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        yield x0, y0
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def overlay_contours(
    raster: np.ndarray,
    contours,
    color: tuple[int, int, int],
    spacing: tuple[float, float] = (1.0, 1.0),
) -> np.ndarray:
    """Rasterize contour polylines over a copy of the raster.

    World coordinates map to pixels via (x/dx, y/dy) rounded to nearest;
    pixels outside the raster are skipped.
    """
    out = np.array(raster, dtype=np.uint8, copy=True)
    h, w = out.shape[:2]
    dx, dy = spacing
    col = np.array(color, dtype=np.uint8)
    for poly in contours.polylines:
        px = np.floor(poly[:, 0] / dx + 0.5).astype(int)
        py = np.floor(poly[:, 1] / dy + 0.5).astype(int)
        for k in range(len(poly) - 1):
            for x, y in _bresenham(px[k], py[k], px[k + 1], py[k + 1]):
                if 0 <= x < w and 0 <= y < h:
                    out[y, x] = col
    return out
