import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from divuq import ScalarField2, UniformGrid2, VectorField2, scalar_minmax, vertex_index


def test_vertex_index_examples():
    g68 = UniformGrid2(68, 68)
    assert vertex_index(g68, 0, 0) == 0
    assert vertex_index(g68, 67, 67) == 4623
    g5 = UniformGrid2(5, 4)
    assert vertex_index(g5, 2, 3) == 17


def test_vertex_index_out_of_range():
    g = UniformGrid2(4, 3)
    for i, j in [(-1, 0), (4, 0), (0, 3), (0, -1)]:
        with pytest.raises(IndexError):
            vertex_index(g, i, j)


@given(
    nx=st.integers(2, 50),
    ny=st.integers(2, 50),
    data=st.data(),
)
def test_vertex_index_roundtrip(nx, ny, data):
    g = UniformGrid2(nx, ny)
    i = data.draw(st.integers(0, nx - 1))
    j = data.draw(st.integers(0, ny - 1))
    k = g.vertex_index(i, j)
    assert (k % nx, k // nx) == (i, j)
    assert g.vertex_ij(k) == (i, j)


@pytest.mark.parametrize("nx,ny,dx,dy", [(1, 3, 1, 1), (3, 1, 1, 1), (3, 3, 0, 1), (3, 3, 1, -2)])
def test_grid_invariants_rejected(nx, ny, dx, dy):
    with pytest.raises(ValueError):
        UniformGrid2(nx, ny, dx, dy)


@given(st.integers(0, 200))
def test_field_length_mismatch_rejected(extra):
    g = UniformGrid2(4, 5)
    n = g.n_vertices
    if extra != n:
        with pytest.raises(ValueError):
            ScalarField2(g, np.zeros(extra))


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite_rejected(bad):
    g = UniformGrid2(3, 3)
    values = np.zeros(9)
    values[4] = bad
    with pytest.raises(ValueError):
        ScalarField2(g, values)
    with pytest.raises(ValueError):
        VectorField2(g, values, np.zeros(9))


def test_fields_are_immutable():
    g = UniformGrid2(3, 3)
    f = ScalarField2(g, np.arange(9.0))
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_scalar_minmax_trivial():
    g = UniformGrid2(3, 3)
    assert scalar_minmax(ScalarField2(g, np.full(9, 3.0))) == (3.0, 3.0)
    g31 = UniformGrid2(3, 2)
    assert scalar_minmax(ScalarField2(g31, [-1, 0, 2, 0, 0, 0])) == (-1.0, 2.0)


def test_scalar_minmax_against_linear_scan(rng):
    # independent oracle: plain python scan
    g = UniformGrid2(23, 17)
    values = rng.normal(size=g.n_vertices)
    lo = hi = values[0]
    for v in values[1:]:
        lo = v if v < lo else lo
        hi = v if v > hi else hi
    assert scalar_minmax(ScalarField2(g, values)) == (lo, hi)
