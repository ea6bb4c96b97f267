import numpy as np
import pytest

from divuq import (
    GaussianVectorField,
    McConfig,
    UniformGrid2,
    VectorField2,
    divergence_deterministic,
    mc_divergence,
    propagate_divergence,
    stencil_distribution,
)
from conftest import random_model

FIG1_NEIGHBORS = ((5.98, 0.96), (6.40, 0.38), (6.50, 0.94), (4.30, 0.65))
# hand evaluation of the closed-form stencil for the inputs above:
# mean  = 6.40/2 - 5.98/2 + 4.30/2 - 6.50/2 = -0.89
# var   = (0.38/2)^2 + (0.96/2)^2 + (0.65/2)^2 + (0.94/2)^2 = 0.593025
FIG1_MEAN = -0.89
FIG1_STD = 0.7700811645534514


def _xy(grid):
    x = (np.arange(grid.n_vertices) % grid.nx) * grid.dx
    y = (np.arange(grid.n_vertices) // grid.nx) * grid.dy
    return x, y


def _oracle_divergence(fld):
    """Independent double-loop stencil evaluation."""
    g = fld.grid
    u = fld.u.reshape(g.ny, g.nx)
    v = fld.v.reshape(g.ny, g.nx)
    cx, cy = 1.0 / (2.0 * g.dx), 1.0 / (2.0 * g.dy)
    bx, by = 1.0 / g.dx, 1.0 / g.dy
    out = np.empty((g.ny, g.nx))
    for j in range(g.ny):
        for i in range(g.nx):
            if i == 0:
                tx_hi, tx_lo = u[j, 1] * bx, u[j, 0] * bx
            elif i == g.nx - 1:
                tx_hi, tx_lo = u[j, i] * bx, u[j, i - 1] * bx
            else:
                tx_hi, tx_lo = u[j, i + 1] * cx, u[j, i - 1] * cx
            if j == 0:
                ty_hi, ty_lo = v[1, i] * by, v[0, i] * by
            elif j == g.ny - 1:
                ty_hi, ty_lo = v[j, i] * by, v[j - 1, i] * by
            else:
                ty_hi, ty_lo = v[j + 1, i] * cy, v[j - 1, i] * cy
            # same left-to-right association as the library kernel, so the
            # comparison can be bitwise
            out[j, i] = tx_hi - tx_lo + ty_hi - ty_lo
    return out.ravel()


def test_divergence_of_identity_field_is_two():
    g = UniformGrid2(12, 9, 0.4, 1.7)
    x, y = _xy(g)
    d = divergence_deterministic(VectorField2(g, x, y))
    assert np.allclose(d.values, 2.0, rtol=0, atol=1e-12)


def test_divergence_of_rotation_is_zero():
    g = UniformGrid2(10, 11, 0.5, 0.25)
    x, y = _xy(g)
    d = divergence_deterministic(VectorField2(g, -y, x))
    assert np.all(d.values == 0.0)


def test_divergence_matches_double_loop_oracle(rng):
    g = UniformGrid2(13, 7, 0.3, 0.9)
    fld = VectorField2(g, rng.normal(size=g.n_vertices), rng.normal(size=g.n_vertices))
    got = divergence_deterministic(fld).values
    assert np.array_equal(got, _oracle_divergence(fld))


def test_stencil_distribution_matches_fig1_hand_evaluation():
    mu, sigma = stencil_distribution(FIG1_NEIGHBORS, (1.0, 1.0))
    assert mu == pytest.approx(FIG1_MEAN, abs=1e-12)
    assert sigma == pytest.approx(FIG1_STD, abs=1e-12)


def test_propagation_agrees_with_stencil_distribution():
    # same four neighbors embedded at the center of a 3x3 grid
    g = UniformGrid2(3, 3)
    mu_u = np.zeros(9)
    mu_v = np.zeros(9)
    sg_u = np.zeros(9)
    sg_v = np.zeros(9)
    (mu_u[3], sg_u[3]), (mu_u[5], sg_u[5]) = FIG1_NEIGHBORS[0], FIG1_NEIGHBORS[1]
    (mu_v[1], sg_v[1]), (mu_v[7], sg_v[7]) = FIG1_NEIGHBORS[2], FIG1_NEIGHBORS[3]
    out = propagate_divergence(GaussianVectorField(g, mu_u, mu_v, sg_u, sg_v))
    assert out.mu[4] == pytest.approx(FIG1_MEAN, abs=1e-12)
    assert out.sigma[4] == pytest.approx(FIG1_STD, abs=1e-12)


def test_fig1_cross_checked_against_mc_oracle():
    from divuq.mc import sample_divergence_1d

    samples = sample_divergence_1d(FIG1_NEIGHBORS, (1.0, 1.0), McConfig(1_000_000, seed=11))
    assert samples.mean() == pytest.approx(FIG1_MEAN, abs=5e-3)
    assert samples.std(ddof=1) == pytest.approx(FIG1_STD, abs=5e-3)


def test_zero_sigma_propagation_is_deterministic_divergence(rng):
    g = UniformGrid2(9, 9, 0.7, 0.2)
    n = g.n_vertices
    mu_u, mu_v = rng.normal(size=n), rng.normal(size=n)
    model = GaussianVectorField(g, mu_u, mu_v, np.zeros(n), np.zeros(n))
    out = propagate_divergence(model)
    assert np.all(out.sigma == 0.0)
    assert np.array_equal(out.mu, divergence_deterministic(VectorField2(g, mu_u, mu_v)).values)


def test_uniform_sigma_interior_value():
    s, h = 0.4, 0.5
    g = UniformGrid2(5, 5, h, h)
    n = g.n_vertices
    model = GaussianVectorField(g, np.zeros(n), np.zeros(n), np.full(n, s), np.full(n, s))
    out = propagate_divergence(model)
    interior = out.sigma.reshape(5, 5)[1:-1, 1:-1]
    assert np.allclose(interior, s / h, rtol=1e-15)


def test_mean_linearity_is_bitwise(rng):
    g = UniformGrid2(17, 23, 0.21, 1.3)
    model = random_model(g, rng)
    out = propagate_divergence(model)
    det = divergence_deterministic(model.mean_field())
    assert np.array_equal(out.mu, det.values)


def test_variance_monotonicity(rng):
    g = UniformGrid2(8, 8)
    model = random_model(g, rng)
    base = propagate_divergence(model).sigma
    bumped_sigma = model.sigma_u.copy()
    bumped_sigma[rng.integers(0, g.n_vertices, 10)] += 0.5
    bumped = GaussianVectorField(g, model.mu_u, model.mu_v, bumped_sigma, model.sigma_v)
    assert np.all(propagate_divergence(bumped).sigma >= base)


def test_sigma_scale_covariance(rng):
    g = UniformGrid2(7, 9, 0.4, 0.6)
    model = random_model(g, rng)
    c = 3.5
    scaled = GaussianVectorField(
        g, model.mu_u, model.mu_v, c * model.sigma_u, c * model.sigma_v
    )
    assert np.allclose(
        propagate_divergence(scaled).sigma,
        c * propagate_divergence(model).sigma,
        rtol=1e-14,
    )


def test_output_sigma_positive_when_any_neighbor_positive():
    g = UniformGrid2(5, 5)
    n = g.n_vertices
    sg_u = np.zeros(n)
    sg_u[g.vertex_index(2, 2)] = 0.3
    model = GaussianVectorField(g, np.zeros(n), np.zeros(n), sg_u, np.zeros(n))
    out = propagate_divergence(model).sigma.reshape(5, 5)
    # x-stencil neighbors of (2,2) see the noisy component
    assert out[2, 1] > 0 and out[2, 3] > 0
    assert out[2, 2] == 0.0  # central stencil skips the vertex itself


def test_mc_equivalence_small_field(rng):
    g = UniformGrid2(6, 6)
    model = random_model(g, rng)
    analytic = propagate_divergence(model)
    est = mc_divergence(model, McConfig(100_000, seed=5))
    bound = 6.0 * analytic.sigma / np.sqrt(100_000)
    assert np.mean(np.abs(est.mean - analytic.mu) < bound) >= 0.99
