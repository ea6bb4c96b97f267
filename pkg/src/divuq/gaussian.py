"""Per-vertex independent Gaussian model fitted from an ensemble, plus the
velocity-magnitude-gradient preprocessing used for vortex-core analysis."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Ensemble2, ScalarField2, UniformGrid2, VectorField2, _frozen_array
from .stencils import gradient_kernel


@dataclass(frozen=True)
class GaussianVectorField:
    """Independent N(mu, sigma^2) per vertex and component, flat row-major."""

    grid: UniformGrid2
    mu_u: np.ndarray = field(repr=False)
    mu_v: np.ndarray = field(repr=False)
    sigma_u: np.ndarray = field(repr=False)
    sigma_v: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.grid.n_vertices
        for name in ("mu_u", "mu_v", "sigma_u", "sigma_v"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name), n, name))
        if np.any(self.sigma_u < 0) or np.any(self.sigma_v < 0):
            raise ValueError("sigmas must be non-negative")

    def mean_field(self) -> VectorField2:
        return VectorField2(self.grid, self.mu_u, self.mu_v)


def fit_gaussian(ensemble: Ensemble2) -> GaussianVectorField:
    """Sample mean and Bessel-corrected (ddof=1) std per vertex/component."""
    u = np.stack([m.u for m in ensemble.members])
    v = np.stack([m.v for m in ensemble.members])
    return GaussianVectorField(
        ensemble.grid,
        u.mean(axis=0),
        v.mean(axis=0),
        u.std(axis=0, ddof=1),
        v.std(axis=0, ddof=1),
    )


def velocity_magnitude(member: VectorField2) -> ScalarField2:
    """sqrt(u^2 + v^2) per vertex."""
    return ScalarField2(member.grid, np.hypot(member.u, member.v))


def gradient(fld: ScalarField2) -> VectorField2:
    """Central-difference gradient, one-sided on the boundary."""
    grid = fld.grid
    idx = np.arange(grid.n_vertices, dtype=np.intp)
    gx, gy = gradient_kernel(grid, fld.values, idx)
    return VectorField2(grid, gx, gy)


def gradient_ensemble(ensemble: Ensemble2) -> Ensemble2:
    """Map each member through velocity_magnitude then gradient."""
    return Ensemble2(
        ensemble.grid,
        tuple(gradient(velocity_magnitude(m)) for m in ensemble.members),
    )
