"""Synthetic vector-field ensembles standing in for external datasets.

Each kind defines a smooth deterministic base field; members add i.i.d.
per-vertex-component Gaussian noise from counter-based streams keyed by
(seed, member, component, vertex).  Member values are rounded through
float32 so files round-trip bit-exactly through the DIVUQ1 container.
"""

from __future__ import annotations

import numpy as np

from .grid import Ensemble2, UniformGrid2, VectorField2
from .rng import normal_stream

KINDS = ("source-sink", "vortex", "wind-like")


def _world_coords(grid: UniformGrid2) -> tuple[np.ndarray, np.ndarray]:
    i = np.arange(grid.n_vertices) % grid.nx
    j = np.arange(grid.n_vertices) // grid.nx
    return i * grid.dx, j * grid.dy


def _bump(x, y, cx, cy, radius):
    r2 = (x - cx) ** 2 + (y - cy) ** 2
    return np.exp(-r2 / radius**2)


def base_field(kind: str, grid: UniformGrid2) -> VectorField2:
    """Deterministic base member for a synthetic kind."""
    x, y = _world_coords(grid)
    lx, ly = (grid.nx - 1) * grid.dx, (grid.ny - 1) * grid.dy
    radius = 0.18 * min(lx, ly)
    if kind == "source-sink":
        sx, sy = 0.3 * lx, 0.5 * ly
        kx, ky = 0.7 * lx, 0.5 * ly
        gs = _bump(x, y, sx, sy, radius)
        gk = _bump(x, y, kx, ky, radius)
        u = (x - sx) * gs - (x - kx) * gk
        v = (y - sy) * gs - (y - ky) * gk
    elif kind == "vortex":
        cx, cy = 0.5 * lx, 0.5 * ly
        g = _bump(x, y, cx, cy, radius)
        u = -(y - cy) * g
        v = (x - cx) * g
    elif kind == "wind-like":
        u = 1.5 + 0.8 * np.sin(2 * np.pi * y / ly) * np.cos(np.pi * x / lx)
        v = 0.4 * np.cos(2 * np.pi * x / lx) + 0.3 * np.sin(np.pi * y / ly)
    else:
        raise ValueError(f"unknown kind {kind!r}; choose one of {KINDS}")
    return VectorField2(grid, u, v)


def generate_synthetic(
    kind: str,
    grid: UniformGrid2,
    n_members: int,
    noise_sigma: float,
    seed: int,
) -> Ensemble2:
    if n_members < 2:
        raise ValueError("n_members must be >= 2")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be non-negative")
    base = base_field(kind, grid)
    n = grid.n_vertices
    vertex = np.arange(n, dtype=np.uint64)
    members = []
    for k in range(n_members):
        c_u = (np.uint64(2 * k)) * np.uint64(n) + vertex
        c_v = (np.uint64(2 * k + 1)) * np.uint64(n) + vertex
        u = base.u + noise_sigma * normal_stream(seed, c_u)
        v = base.v + noise_sigma * normal_stream(seed, c_v)
        members.append(
            VectorField2(
                grid,
                u.astype(np.float32).astype(np.float64),
                v.astype(np.float32).astype(np.float64),
            )
        )
    return Ensemble2(grid, tuple(members))
