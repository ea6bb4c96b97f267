"""Divergence uncertainty quantification for 2D vector-field ensembles.

Fits independent per-vertex Gaussian models to an ensemble, propagates
them in closed form through finite-difference divergence, computes
level-crossing probabilities for isovalues, and validates/benchmarks
against a deterministic Monte Carlo oracle.
"""

from .contours import ContourSet, interpolate_at, marching_squares
from .divergence import (
    GaussianScalarField,
    divergence_deterministic,
    propagate_divergence,
    stencil_distribution,
)
from .gaussian import (
    GaussianVectorField,
    fit_gaussian,
    gradient,
    gradient_ensemble,
    velocity_magnitude,
)
from .grid import (
    Ensemble2,
    ScalarField2,
    UniformGrid2,
    VectorField2,
    scalar_minmax,
    vertex_index,
)
from .lcp import LcpField, cell_crossing_probability, lcp
from .mc import (
    McConfig,
    McDivergenceEstimate,
    McHistogram,
    error_metrics,
    mc_divergence,
    mc_histogram_1d,
    sample_divergence_1d,
)
from .parallel import BenchReport, ParallelConfig, bench, parallel_map
from .render import (
    DEFAULT_LUT,
    encode_ppm,
    load_lut,
    overlay_contours,
    read_ppm,
    render_colormap,
    write_ppm,
)
from .synthetic import generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "ContourSet",
    "DEFAULT_LUT",
    "Ensemble2",
    "GaussianScalarField",
    "GaussianVectorField",
    "LcpField",
    "McConfig",
    "McDivergenceEstimate",
    "McHistogram",
    "ParallelConfig",
    "ScalarField2",
    "UniformGrid2",
    "VectorField2",
    "bench",
    "cell_crossing_probability",
    "divergence_deterministic",
    "encode_ppm",
    "error_metrics",
    "fit_gaussian",
    "generate_synthetic",
    "gradient",
    "gradient_ensemble",
    "interpolate_at",
    "lcp",
    "load_lut",
    "marching_squares",
    "mc_divergence",
    "mc_histogram_1d",
    "overlay_contours",
    "parallel_map",
    "propagate_divergence",
    "read_ppm",
    "render_colormap",
    "sample_divergence_1d",
    "scalar_minmax",
    "stencil_distribution",
    "velocity_magnitude",
    "vertex_index",
    "write_ppm",
]
