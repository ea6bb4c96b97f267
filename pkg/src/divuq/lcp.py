"""Level-crossing probability per grid cell for a Gaussian scalar field.

A cell is crossed by the isocontour unless all four vertex values fall on
the same side of the isovalue.  With independent Gaussian vertices the
same-side probabilities factor, giving

    LCP = 1 - (prod_k P[X_k <= theta] + prod_k P[X_k > theta]).

Both tails are evaluated directly with the normal CDF (never as 1 - p),
so negating means and isovalue together permutes the two products and the
result is bit-identical under negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .divergence import GaussianScalarField
from .grid import UniformGrid2, _frozen_array
from .parallel import ParallelConfig, parallel_map


@dataclass(frozen=True)
class LcpField:
    """Per-cell crossing probability, cell-major (index j*(nx-1) + i)."""

    grid: UniformGrid2
    isovalue: float
    probabilities: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "probabilities",
            _frozen_array(self.probabilities, self.grid.n_cells, "probabilities"),
        )
        p = self.probabilities
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("probabilities must lie in [0, 1]")

    def as_2d(self) -> np.ndarray:
        return self.probabilities.reshape(self.grid.ny - 1, self.grid.nx - 1)


def _tail_probs(mu: np.ndarray, sigma: np.ndarray, isovalue: float):
    """(P[X <= theta], P[X > theta]) per vertex, degenerate sigma included.

    sigma == 0 collapses to a step function with mu == theta counted as
    'below or equal' (p_below = 1).
    """
    below = np.empty_like(mu)
    above = np.empty_like(mu)
    degenerate = sigma == 0
    if np.any(degenerate):
        below[degenerate] = np.where(mu[degenerate] <= isovalue, 1.0, 0.0)
        above[degenerate] = 1.0 - below[degenerate]
    ok = ~degenerate
    if np.any(ok):
        # subnormal sigma can overflow the division to +-inf; ndtr maps
        # that to the correct 0/1 limit, so the overflow is harmless
        with np.errstate(over="ignore"):
            t = (isovalue - mu[ok]) / sigma[ok]
        below[ok] = ndtr(t)
        above[ok] = ndtr(-t)
    return below, above


def cell_crossing_probability(
    mu: np.ndarray, sigma: np.ndarray, isovalue: float
) -> np.ndarray:
    """LCP for stacked cells: mu, sigma have shape (..., 4)."""
    below, above = _tail_probs(np.asarray(mu, float), np.asarray(sigma, float), isovalue)
    same_side = np.prod(below, axis=-1) + np.prod(above, axis=-1)
    return np.clip(1.0 - same_side, 0.0, 1.0)


def lcp(
    fld: GaussianScalarField, isovalue: float, config: ParallelConfig | None = None
) -> LcpField:
    """Crossing probability of the isovalue for every grid cell."""
    grid = fld.grid
    nxc = grid.nx - 1
    mu, sigma = fld.mu, fld.sigma

    def kernel(cells: np.ndarray) -> np.ndarray:
        ci = cells % nxc
        cj = cells // nxc
        v00 = cj * grid.nx + ci
        corners = np.stack([v00, v00 + 1, v00 + grid.nx, v00 + grid.nx + 1], axis=-1)
        return cell_crossing_probability(mu[corners], sigma[corners], isovalue)

    n = grid.n_cells
    if config is None:
        probs = kernel(np.arange(n, dtype=np.intp))
    else:
        probs = parallel_map(n, kernel, config, vectorized=True)
    return LcpField(grid, isovalue, probs)
