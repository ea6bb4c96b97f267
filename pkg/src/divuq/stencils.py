"""Finite-difference stencil indexing shared by gradient and divergence.

Interior vertices use central differences, boundary vertices one-sided
(forward at the low edge, backward at the high edge).  Every derivative
is evaluated as ``f[hi]*coeff - f[lo]*coeff`` so that the deterministic
stencil and the Gaussian mean propagation are the same floating-point
expression, making their equality exact rather than approximate.
"""

from __future__ import annotations

import numpy as np

from .grid import UniformGrid2


def axis_stencil(
    grid: UniformGrid2, idx: np.ndarray, axis: str
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-vertex stencil for d/dx (axis='x') or d/dy (axis='y').

    Parameters
    ----------
    grid : UniformGrid2
    idx : flat vertex indices (any integer array)
    axis : 'x' or 'y'

    Returns
    -------
    (lo, hi, coeff): linear indices of the low/high neighbor and the
    stencil coefficient, such that derivative = f[hi]*coeff - f[lo]*coeff.
    Interior coeff is 1/(2h); boundary coeff is 1/h with one neighbor
    replaced by the vertex itself.
    """
    idx = np.asarray(idx, dtype=np.intp)
    nx = grid.nx
    i = idx % nx
    j = idx // nx
    if axis == "x":
        along, n_along, h, stride, base = i, nx, grid.dx, 1, j * nx
    elif axis == "y":
        along, n_along, h, stride, base = j, grid.ny, grid.dy, nx, i
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")

    lo_along = np.clip(along - 1, 0, n_along - 1)
    hi_along = np.clip(along + 1, 0, n_along - 1)
    coeff = np.where(
        (along > 0) & (along < n_along - 1), 1.0 / (2.0 * h), 1.0 / h
    )
    return base + lo_along * stride, base + hi_along * stride, coeff


def divergence_kernel(
    grid: UniformGrid2, u: np.ndarray, v: np.ndarray, idx: np.ndarray
) -> np.ndarray:
    """du/dx + dv/dy at the given vertices.

    u and v may be flat (n,) fields or stacked (batch, n) sample blocks;
    the per-vertex arithmetic is identical either way.
    """
    lx, hx, cx = axis_stencil(grid, idx, "x")
    ly, hy, cy = axis_stencil(grid, idx, "y")
    return (
        u[..., hx] * cx - u[..., lx] * cx + v[..., hy] * cy - v[..., ly] * cy
    )


def divergence_variance_kernel(
    grid: UniformGrid2, sigma_u: np.ndarray, sigma_v: np.ndarray, idx: np.ndarray
) -> np.ndarray:
    """Variance of the divergence stencil for independent Gaussian inputs.

    Each stencil term c*X contributes (c*sigma)^2; terms are summed in the
    same x-then-y order as the mean kernel.
    """
    lx, hx, cx = axis_stencil(grid, idx, "x")
    ly, hy, cy = axis_stencil(grid, idx, "y")
    return (
        (sigma_u[hx] * cx) ** 2
        + (sigma_u[lx] * cx) ** 2
        + (sigma_v[hy] * cy) ** 2
        + (sigma_v[ly] * cy) ** 2
    )


def gradient_kernel(
    grid: UniformGrid2, values: np.ndarray, idx: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(ds/dx, ds/dy) at the given vertices."""
    lx, hx, cx = axis_stencil(grid, idx, "x")
    ly, hy, cy = axis_stencil(grid, idx, "y")
    return (
        values[hx] * cx - values[lx] * cx,
        values[hy] * cy - values[ly] * cy,
    )
