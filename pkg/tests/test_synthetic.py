import numpy as np
import pytest

from divuq import UniformGrid2, divergence_deterministic, fit_gaussian
from divuq.synthetic import base_field, generate_synthetic


def test_zero_noise_members_identical():
    g = UniformGrid2(16, 16)
    ens = generate_synthetic("vortex", g, 5, 0.0, seed=3)
    for m in ens.members[1:]:
        assert np.array_equal(m.u, ens.members[0].u)
        assert np.array_equal(m.v, ens.members[0].v)


def test_generation_is_deterministic():
    g = UniformGrid2(8, 8)
    a = generate_synthetic("wind-like", g, 3, 0.2, seed=11)
    b = generate_synthetic("wind-like", g, 3, 0.2, seed=11)
    c = generate_synthetic("wind-like", g, 3, 0.2, seed=12)
    assert np.array_equal(a.members[0].u, b.members[0].u)
    assert not np.array_equal(a.members[0].u, c.members[0].u)


def test_unknown_kind_rejected():
    g = UniformGrid2(4, 4)
    with pytest.raises(ValueError):
        generate_synthetic("tornado", g, 3, 0.1, seed=0)
    with pytest.raises(ValueError):
        generate_synthetic("vortex", g, 1, 0.1, seed=0)


def test_source_sink_divergence_signs():
    g = UniformGrid2(41, 41, 0.1, 0.1)
    div = divergence_deterministic(base_field("source-sink", g)).as_2d()
    # source sits at 30% of the span, sink mirrored at 70%
    src = round(0.3 * 40)
    snk = round(0.7 * 40)
    mid = 20
    assert div[mid, src] > 0
    assert div[mid, snk] < 0


def test_fit_recovers_noise_sigma():
    # chi-distribution coverage for m=20, ddof=1 within 25% is 87.8%;
    # require >= 85% of vertices inside that band
    g = UniformGrid2(30, 30)
    sigma = 0.4
    ens = generate_synthetic("vortex", g, 20, sigma, seed=5)
    model = fit_gaussian(ens)
    for fitted in (model.sigma_u, model.sigma_v):
        frac = np.mean(np.abs(fitted - sigma) <= 0.25 * sigma)
        assert frac >= 0.85
