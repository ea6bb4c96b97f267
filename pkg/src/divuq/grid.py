"""Uniform 2D grid geometry and deterministic scalar/vector fields.

Conventions shared by the whole package:
    - Vertices are indexed (i, j) with 0 <= i < nx, 0 <= j < ny.
    - Arrays are flat, row-major, x-fastest: linear index = j * nx + i.
    - The grid is vertex-centered; cells are the (nx-1) x (ny-1) quads
      between vertices, cell index = j * (nx-1) + i.
    - Vertex (i, j) sits at world position (i * dx, j * dy).

All field types are immutable after construction (backing arrays are
marked read-only) and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _frozen_array(values, n: int, name: str) -> np.ndarray:
    """Validate and freeze a flat float64 array of length n."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size != n:
        raise ValueError(f"{name}: expected {n} values, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite values are not allowed")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class UniformGrid2:
    """Uniform 2D grid: nx x ny vertices with spacing (dx, dy)."""

    nx: int
    ny: int
    dx: float = 1.0
    dy: float = 1.0

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.nx}x{self.ny}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"grid spacing must be positive, got ({self.dx}, {self.dy})")

    @property
    def n_vertices(self) -> int:
        return self.nx * self.ny

    @property
    def n_cells(self) -> int:
        return (self.nx - 1) * (self.ny - 1)

    def vertex_index(self, i: int, j: int) -> int:
        """Linear index of vertex (i, j); raises IndexError when out of range."""
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            raise IndexError(f"vertex ({i}, {j}) outside {self.nx}x{self.ny} grid")
        return j * self.nx + i

    def vertex_ij(self, index: int) -> tuple[int, int]:
        """Inverse of vertex_index: linear index -> (i, j)."""
        if not (0 <= index < self.n_vertices):
            raise IndexError(f"linear index {index} outside grid of {self.n_vertices} vertices")
        return index % self.nx, index // self.nx


def vertex_index(grid: UniformGrid2, i: int, j: int) -> int:
    """Linear index j*nx + i of vertex (i, j)."""
    return grid.vertex_index(i, j)


@dataclass(frozen=True)
class ScalarField2:
    """One scalar value per vertex, flat row-major."""

    grid: UniformGrid2
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "values", _frozen_array(self.values, self.grid.n_vertices, "values")
        )

    def as_2d(self) -> np.ndarray:
        """(ny, nx) view; row j of the result is the grid row j."""
        return self.values.reshape(self.grid.ny, self.grid.nx)


@dataclass(frozen=True)
class VectorField2:
    """One deterministic vector (u, v) per vertex, flat row-major."""

    grid: UniformGrid2
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.grid.n_vertices
        object.__setattr__(self, "u", _frozen_array(self.u, n, "u"))
        object.__setattr__(self, "v", _frozen_array(self.v, n, "v"))


@dataclass(frozen=True)
class Ensemble2:
    """Ordered collection of vector-field members on one shared grid."""

    grid: UniformGrid2
    members: tuple[VectorField2, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if len(members) < 2:
            raise ValueError(f"ensemble needs at least 2 members, got {len(members)}")
        for k, m in enumerate(members):
            if m.grid != self.grid:
                raise ValueError(f"member {k} grid {m.grid} differs from ensemble grid {self.grid}")
        object.__setattr__(self, "members", members)

    @property
    def n_members(self) -> int:
        return len(self.members)


def scalar_minmax(fld: ScalarField2) -> tuple[float, float]:
    """Exact (min, max) over all vertex values."""
    return float(fld.values.min()), float(fld.values.max())
