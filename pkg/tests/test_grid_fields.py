"""Grid construction, field containers, and compatibility rules."""

import numpy as np
import pytest

from chanrec import ChannelGrid, GridMismatchError, ScalarField, VectorField, ensure_same_grid
from chanrec.fields import field_from_function


def test_grid_derived_quantities():
    g = ChannelGrid(L_x=4.0, a=-1.0, b=1.0, N_x=16, N_y=9)
    assert g.alpha * g.L_x == pytest.approx(2 * np.pi, rel=1e-15)
    assert g.h_x == pytest.approx(0.25)
    assert g.h_y == pytest.approx(0.25)
    assert g.x[0] == 0.0 and g.x[-1] == pytest.approx(g.L_x - g.h_x)
    assert g.y[0] == -1.0 and g.y[-1] == 1.0
    assert g.shape == (16, 9)
    assert g.spectral_shape == (9, 9)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(L_x=0.0, a=0.0, b=1.0, N_x=8, N_y=5),
        dict(L_x=1.0, a=1.0, b=1.0, N_x=8, N_y=5),
        dict(L_x=1.0, a=0.0, b=1.0, N_x=7, N_y=5),
        dict(L_x=1.0, a=0.0, b=1.0, N_x=-8, N_y=5),
        dict(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=2),
    ],
)
def test_grid_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        ChannelGrid(**kwargs)


def test_grid_equality_is_fieldwise():
    g1 = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=5)
    g2 = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=5)
    g3 = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=7)
    assert g1 == g2
    assert ensure_same_grid(g1, g2) is g1
    with pytest.raises(GridMismatchError):
        ensure_same_grid(g1, g3)


def test_scalar_field_validation_and_immutability():
    g = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=5)
    with pytest.raises(ValueError):
        ScalarField(g, np.zeros((8, 4)))
    bad = np.zeros((8, 5))
    bad[3, 2] = np.nan
    with pytest.raises(ValueError):
        ScalarField(g, bad)
    f = ScalarField(g, np.ones((8, 5)))
    with pytest.raises(ValueError):
        f.values[0, 0] = 2.0


def test_field_arithmetic_checks_grids():
    g1 = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=5)
    g2 = ChannelGrid(L_x=2.0, a=0.0, b=1.0, N_x=8, N_y=5)
    f1 = ScalarField(g1, np.ones((8, 5)))
    f2 = ScalarField(g2, np.ones((8, 5)))
    with pytest.raises(GridMismatchError):
        _ = f1 + f2
    assert np.all((2.0 * f1 - f1).values == 1.0)


def test_vector_field_shares_one_grid():
    g1 = ChannelGrid(L_x=1.0, a=0.0, b=1.0, N_x=8, N_y=5)
    g2 = ChannelGrid(L_x=2.0, a=0.0, b=1.0, N_x=8, N_y=5)
    u = ScalarField(g1, np.ones((8, 5)))
    v = ScalarField(g2, np.zeros((8, 5)))
    with pytest.raises(GridMismatchError):
        VectorField(g1, u, v)


def test_field_from_function_samples_mesh():
    g = ChannelGrid(L_x=2 * np.pi, a=0.0, b=np.pi, N_x=8, N_y=5)
    f = field_from_function(g, lambda X, Y: X + 10 * Y)
    assert f.values[2, 1] == pytest.approx(g.x[2] + 10 * g.y[1])
