"""Closed-form propagation of Gaussian vector uncertainty through divergence.

For independent per-vertex Gaussian components, the finite-difference
divergence is a linear combination of Gaussians and therefore itself
Gaussian.  The mean is the same stencil applied to the component means;
the variance is the coefficient-weighted sum of squared component sigmas.
Boundary vertices use the one-sided stencil, whose variance is
(sigma_hi^2 + sigma_lo^2) / h^2 by the same independence argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import ScalarField2, UniformGrid2, VectorField2, _frozen_array
from .parallel import ParallelConfig, parallel_map
from .stencils import divergence_kernel, divergence_variance_kernel


@dataclass(frozen=True)
class GaussianScalarField:
    """Per-vertex Gaussian scalar model N(mu, sigma^2), flat row-major."""

    grid: UniformGrid2
    mu: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.grid.n_vertices
        object.__setattr__(self, "mu", _frozen_array(self.mu, n, "mu"))
        object.__setattr__(self, "sigma", _frozen_array(self.sigma, n, "sigma"))
        if np.any(self.sigma < 0):
            raise ValueError("sigma must be non-negative")

    def mean_field(self) -> ScalarField2:
        return ScalarField2(self.grid, self.mu)


def divergence_deterministic(fld: VectorField2) -> ScalarField2:
    """du/dx + dv/dy with central interior and one-sided boundary stencils."""
    grid = fld.grid
    idx = np.arange(grid.n_vertices, dtype=np.intp)
    return ScalarField2(grid, divergence_kernel(grid, fld.u, fld.v, idx))


def propagate_divergence(model, config: ParallelConfig | None = None) -> GaussianScalarField:
    """Divergence distribution of an independent-Gaussian vector model.

    The output mean equals divergence_deterministic of the mean field
    bit-for-bit (same stencil expression, same evaluation order).  When a
    ParallelConfig is given, vertices are mapped in parallel chunks with
    results identical to the serial path.
    """
    grid = model.grid
    mu_u, mu_v = model.mu_u, model.mu_v
    sigma_u, sigma_v = model.sigma_u, model.sigma_v

    def kernel(idx: np.ndarray) -> np.ndarray:
        mu = divergence_kernel(grid, mu_u, mu_v, idx)
        var = divergence_variance_kernel(grid, sigma_u, sigma_v, idx)
        return np.stack([mu, np.sqrt(var)], axis=-1)

    n = grid.n_vertices
    if config is None:
        out = kernel(np.arange(n, dtype=np.intp))
    else:
        out = parallel_map(n, kernel, config, vectorized=True, width=2)
    return GaussianScalarField(grid, out[:, 0], out[:, 1])


def stencil_distribution(neighbors, spacing: tuple[float, float]) -> tuple[float, float]:
    """Divergence distribution (mu, sigma) at one interior vertex.

    neighbors: four (mu, sigma) pairs in stencil order -- u at i-1, u at
    i+1, v at j-1, v at j+1.  Evaluation order matches the field kernel:
    x terms first, then y terms.
    """
    (mu_um, s_um), (mu_up, s_up), (mu_vm, s_vm), (mu_vp, s_vp) = neighbors
    dx, dy = spacing
    cx, cy = 1.0 / (2.0 * dx), 1.0 / (2.0 * dy)
    mu = mu_up * cx - mu_um * cx + mu_vp * cy - mu_vm * cy
    var = (s_up * cx) ** 2 + (s_um * cx) ** 2 + (s_vp * cy) ** 2 + (s_vm * cy) ** 2
    return float(mu), float(np.sqrt(var))
