"""Monte Carlo estimation of divergence uncertainty.

Serves two purposes: correctness oracle for the closed-form propagation
and performance baseline for benchmarks.  Draws come from counter-based
streams keyed by (seed, sample, component, vertex), so results are
bit-identical for a given (model, config) no matter how the work is
partitioned.  Per-vertex statistics are accumulated with one-pass Welford
updates in strict sample order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .divergence import GaussianScalarField
from .gaussian import GaussianVectorField
from .grid import UniformGrid2, _frozen_array
from .rng import normal_stream
from .stencils import divergence_kernel

# draws per block are capped to bound peak memory, not to change results
_BLOCK_DRAWS = 8_000_000


@dataclass(frozen=True)
class McConfig:
    n_samples: int
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class McDivergenceEstimate:
    """Empirical per-vertex divergence mean/std (Bessel-corrected)."""

    grid: UniformGrid2
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)
    n_samples: int = 0

    def __post_init__(self):
        n = self.grid.n_vertices
        object.__setattr__(self, "mean", _frozen_array(self.mean, n, "mean"))
        object.__setattr__(self, "std", _frozen_array(self.std, n, "std"))
        if self.n_samples < 2:
            raise ValueError("n_samples must be >= 2 when std is populated")


@dataclass(frozen=True)
class McHistogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    n_samples: int

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=np.float64)
        counts = np.asarray(self.counts, dtype=np.int64)
        if edges.ndim != 1 or np.any(np.diff(edges) <= 0):
            raise ValueError("bin_edges must be strictly increasing")
        if counts.shape != (edges.size - 1,) or np.any(counts < 0):
            raise ValueError("counts must be non-negative with length len(edges)-1")
        if int(counts.sum()) != self.n_samples:
            raise ValueError("counts must sum to n_samples")
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)

    def normalized_density(self) -> np.ndarray:
        """counts scaled so the histogram integrates to 1."""
        widths = np.diff(self.bin_edges)
        return self.counts / (self.n_samples * widths)


def _sample_components(
    model: GaussianVectorField, seed: int, samples: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Draw (len(samples), n) u and v sample blocks from the model."""
    n = model.grid.n_vertices
    vertex = np.arange(n, dtype=np.uint64)
    s = samples.astype(np.uint64)[:, None]
    c_u = (s * np.uint64(2)) * np.uint64(n) + vertex
    c_v = (s * np.uint64(2) + np.uint64(1)) * np.uint64(n) + vertex
    u = model.mu_u + model.sigma_u * normal_stream(seed, c_u)
    v = model.mu_v + model.sigma_v * normal_stream(seed, c_v)
    return u, v


def mc_divergence(model: GaussianVectorField, config: McConfig) -> McDivergenceEstimate:
    """Per-vertex empirical divergence mean/std over config.n_samples draws."""
    if config.n_samples < 2:
        raise ValueError("mc_divergence needs n_samples >= 2")
    grid = model.grid
    n = grid.n_vertices
    idx = np.arange(n, dtype=np.intp)

    mean = np.zeros(n)
    m2 = np.zeros(n)
    block = max(1, _BLOCK_DRAWS // (2 * n))
    count = 0
    for start in range(0, config.n_samples, block):
        samples = np.arange(start, min(start + block, config.n_samples))
        u, v = _sample_components(model, config.seed, samples)
        div = divergence_kernel(grid, u, v, idx)
        for row in div:  # strict sample order keeps results partition-independent
            count += 1
            delta = row - mean
            mean += delta / count
            m2 += delta * (row - mean)
    return McDivergenceEstimate(
        grid, mean, np.sqrt(m2 / (count - 1)), config.n_samples
    )


def mc_histogram_1d(
    neighbors,
    spacing: tuple[float, float],
    config: McConfig,
    n_bins: int,
) -> McHistogram:
    """Histogram of sampled single-vertex divergence.

    neighbors: four (mu, sigma) pairs in stencil order -- u at i-1, u at
    i+1, v at j-1, v at j+1.  Bins are uniform over the sampled [min, max].
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    values = sample_divergence_1d(neighbors, spacing, config)
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        # all draws identical (all sigmas zero): one-bin degenerate histogram
        return McHistogram(np.array([lo - 0.5, hi + 0.5]), np.array([values.size]), values.size)
    counts, edges = np.histogram(values, bins=n_bins, range=(lo, hi))
    return McHistogram(edges, counts, values.size)


def sample_divergence_1d(
    neighbors, spacing: tuple[float, float], config: McConfig
) -> np.ndarray:
    """Raw single-vertex divergence samples behind mc_histogram_1d."""
    (mu_um, s_um), (mu_up, s_up), (mu_vm, s_vm), (mu_vp, s_vp) = neighbors
    for s in (s_um, s_up, s_vm, s_vp):
        if s < 0:
            raise ValueError("sigmas must be non-negative")
    dx, dy = spacing
    counters = np.arange(config.n_samples, dtype=np.uint64) * np.uint64(4)
    um = mu_um + s_um * normal_stream(config.seed, counters)
    up = mu_up + s_up * normal_stream(config.seed, counters + np.uint64(1))
    vm = mu_vm + s_vm * normal_stream(config.seed, counters + np.uint64(2))
    vp = mu_vp + s_vp * normal_stream(config.seed, counters + np.uint64(3))
    return (up - um) / (2.0 * dx) + (vp - vm) / (2.0 * dy)


def error_metrics(
    estimate: McDivergenceEstimate, analytic: GaussianScalarField
) -> tuple[float, float, float]:
    """(e_m, e_sigma, sse) between the empirical estimate and the model.

    e_m / e_sigma are mean absolute per-vertex errors of mean and std;
    sse sums squared errors of both over all vertices.
    """
    if estimate.grid != analytic.grid:
        raise ValueError("estimate and analytic fields are on different grids")
    dm = estimate.mean - analytic.mu
    ds = estimate.std - analytic.sigma
    return (
        float(np.abs(dm).mean()),
        float(np.abs(ds).mean()),
        float(np.sum(dm**2) + np.sum(ds**2)),
    )
