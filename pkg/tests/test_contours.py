import numpy as np

from divuq import ScalarField2, UniformGrid2, marching_squares
from divuq.contours import interpolate_at


def _xy(grid):
    x = (np.arange(grid.n_vertices) % grid.nx) * grid.dx
    y = (np.arange(grid.n_vertices) // grid.nx) * grid.dy
    return x, y


def test_linear_ramp_gives_single_vertical_line():
    g = UniformGrid2(6, 5)
    x, _ = _xy(g)
    cs = marching_squares(ScalarField2(g, x), 2.5)
    assert len(cs.polylines) == 1
    poly = cs.polylines[0]
    assert np.allclose(poly[:, 0], 2.5, rtol=0, atol=1e-12)
    # spans the full grid height
    assert poly[:, 1].min() == 0.0
    assert poly[:, 1].max() == 4.0


def test_constant_field_has_no_contour():
    g = UniformGrid2(4, 4)
    cs = marching_squares(ScalarField2(g, np.full(16, 1.0)), 2.0)
    assert cs.polylines == ()


def test_bump_gives_closed_contour_reproducing_isovalue():
    g = UniformGrid2(41, 41, 0.05, 0.05)
    x, y = _xy(g)
    field = ScalarField2(g, np.exp(-((x - 1.0) ** 2 + (y - 1.0) ** 2) / 0.1))
    theta = 0.5
    cs = marching_squares(field, theta)
    assert len(cs.polylines) == 1
    poly = cs.polylines[0]
    # closed loop
    assert tuple(poly[0]) == tuple(poly[-1])
    for px, py in poly[:-1]:
        assert abs(interpolate_at(field, px, py) - theta) < 1e-9


def test_vertex_equal_to_isovalue_is_perturbed():
    g = UniformGrid2(3, 3)
    values = np.array([0, 1, 2, 1, 2, 3, 2, 3, 4], dtype=float)
    cs = marching_squares(ScalarField2(g, values), 2.0)
    # no crossing point may coincide with a grid vertex
    for poly in cs.polylines:
        for px, py in poly:
            on_vertex = float(px).is_integer() and float(py).is_integer()
            assert not on_vertex


def test_saddle_cells_resolve_consistently():
    # checkerboard 2x2: both saddle cases appear, segments must stitch
    g = UniformGrid2(3, 3)
    values = np.array([1, -1, 1, -1, 1, -1, 1, -1, 1], dtype=float)
    cs = marching_squares(ScalarField2(g, values), 0.0)
    assert cs.n_points > 0
    for poly in cs.polylines:
        assert poly.shape[0] >= 2


def test_points_stay_inside_grid_bounds(rng):
    g = UniformGrid2(9, 7, 0.3, 0.8)
    field = ScalarField2(g, rng.normal(size=g.n_vertices))
    cs = marching_squares(field, 0.1)
    for poly in cs.polylines:
        assert np.all(poly[:, 0] >= 0.0) and np.all(poly[:, 0] <= (g.nx - 1) * g.dx)
        assert np.all(poly[:, 1] >= 0.0) and np.all(poly[:, 1] <= (g.ny - 1) * g.dy)


def test_segments_shared_between_cells_stitch_exactly(rng):
    # every interior crossing must join two segments: endpoints of degree 1
    # may only lie on the grid boundary
    g = UniformGrid2(12, 10, 0.7, 0.4)
    field = ScalarField2(g, rng.normal(size=g.n_vertices))
    cs = marching_squares(field, 0.0)
    lx, ly = (g.nx - 1) * g.dx, (g.ny - 1) * g.dy
    for poly in cs.polylines:
        closed = tuple(poly[0]) == tuple(poly[-1])
        if not closed:
            for px, py in (poly[0], poly[-1]):
                on_edge = (
                    abs(px) < 1e-12 or abs(px - lx) < 1e-12
                    or abs(py) < 1e-12 or abs(py - ly) < 1e-12
                )
                assert on_edge
