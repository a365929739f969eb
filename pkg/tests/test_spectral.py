"""Fourier transforms along x: conventions, derivatives, truncation splits."""

import numpy as np
import pytest

from chanrec import ChannelGrid, ScalarField, ddx, tail_above, to_physical, to_spectral, truncate_above
from chanrec.fields import field_from_function
from chanrec.operators import integrate
from chanrec.spectral import spectral_l2_norm_sq


@pytest.fixture
def grid():
    return ChannelGrid(L_x=2 * np.pi, a=0.0, b=np.pi, N_x=32, N_y=17)


def random_field(grid, seed=0):
    rng = np.random.default_rng(seed)
    return ScalarField(grid, rng.standard_normal(grid.shape))


def test_single_cosine_mode_coefficient(grid):
    f = field_from_function(grid, lambda X, Y: np.cos(grid.alpha * X))
    F = to_spectral(f)
    assert F.modes[1, 0] == pytest.approx(0.5, abs=1e-14)
    others = np.abs(F.modes).copy()
    others[1, :] = 0.0
    assert np.max(others) < 1e-14


def test_constant_field_is_mode_zero(grid):
    f = field_from_function(grid, lambda X, Y: 3.0 * np.ones_like(X))
    F = to_spectral(f)
    assert np.allclose(F.modes[0, :], 3.0)
    assert np.max(np.abs(F.modes[1:, :])) < 1e-14


def test_round_trip_relative(grid):
    f = random_field(grid, seed=1)
    back = to_physical(to_spectral(f))
    scale = np.max(np.abs(f.values))
    assert np.max(np.abs(back.values - f.values)) <= 1e-12 * scale


def test_parseval_row_consistency(grid):
    f = random_field(grid, seed=2)
    F = to_spectral(f)
    w = grid.mode_weights
    for j in (0, 5, grid.N_y - 1):
        mean_sq = np.mean(f.values[:, j] ** 2)
        parseval = np.sum(w * np.abs(F.modes[:, j]) ** 2)
        assert parseval == pytest.approx(mean_sq, rel=1e-12)


def test_ddx_single_mode(grid):
    f = field_from_function(grid, lambda X, Y: np.sin(grid.alpha * X))
    d = ddx(f)
    exact = field_from_function(grid, lambda X, Y: grid.alpha * np.cos(grid.alpha * X))
    assert np.max(np.abs(d.values - exact.values)) < 1e-12


def test_ddx_constant_and_separable(grid):
    const = field_from_function(grid, lambda X, Y: np.full_like(X, 7.0))
    assert np.max(np.abs(ddx(const).values)) < 1e-12
    f = field_from_function(grid, lambda X, Y: np.sin(3 * grid.alpha * X) * np.exp(Y))
    exact = field_from_function(grid, lambda X, Y: 3 * grid.alpha * np.cos(3 * grid.alpha * X) * np.exp(Y))
    assert np.max(np.abs(ddx(f).values - exact.values)) <= 1e-12 * np.max(np.abs(exact.values))


def test_ddx_zeroes_nyquist_mode(grid):
    F = to_spectral(random_field(grid, seed=3))
    d_modes = to_spectral(ddx(to_physical(F))).modes
    assert np.max(np.abs(d_modes[-1, :])) < 1e-12


def test_ddx_preserves_zero_rows(grid):
    vals = np.ones(grid.shape)
    vals[:, 0] = 0.0
    d = ddx(ScalarField(grid, vals))
    assert np.all(d.values[:, 0] == 0.0)


def test_product_rule_residual_decays_with_x_resolution():
    """Aliasing in d(fg)/dx vanishes once the product is resolved."""
    norms = []
    for nx in (16, 32, 64):
        g = ChannelGrid(L_x=2 * np.pi, a=0.0, b=np.pi, N_x=nx, N_y=9)
        f = field_from_function(g, lambda X, Y: np.sin(5 * g.alpha * X))
        h = field_from_function(g, lambda X, Y: np.cos(6 * g.alpha * X))
        fg = ScalarField(g, f.values * h.values)
        resid = ddx(fg).values - f.values * ddx(h).values - h.values * ddx(f).values
        norms.append(np.sqrt(integrate(ScalarField(g, resid**2))))
    assert norms[1] < norms[0]
    assert norms[2] < 1e-12


def test_truncate_tail_split(grid):
    f = random_field(grid, seed=4)
    F = to_spectral(f)
    N = 5
    low = truncate_above(F, N)
    high = tail_above(F, N)
    assert np.max(np.abs(low.modes + high.modes - F.modes)) < 1e-15
    assert np.max(np.abs(low.modes[N + 1 :, :])) == 0.0
    assert np.max(np.abs(high.modes[: N + 1, :])) == 0.0


def test_single_high_mode_splits_cleanly(grid):
    f = field_from_function(grid, lambda X, Y: np.sin(5 * grid.alpha * X))
    F = to_spectral(f)
    assert spectral_l2_norm_sq(truncate_above(F, 4)) < 1e-25
    assert spectral_l2_norm_sq(tail_above(F, 4)) == pytest.approx(spectral_l2_norm_sq(F), rel=1e-12)


def test_band_limited_tail_vanishes(grid):
    f = field_from_function(grid, lambda X, Y: np.cos(3 * grid.alpha * X) * (1 + Y))
    F = to_spectral(f)
    assert spectral_l2_norm_sq(tail_above(F, grid.N_x // 2 - 1)) < 1e-22


@pytest.mark.parametrize("seed", range(5))
def test_parseval_split_orthogonal(grid, seed):
    f = random_field(grid, seed=seed)
    F = to_spectral(f)
    total = spectral_l2_norm_sq(F)
    for N in (1, 4, 9):
        parts = spectral_l2_norm_sq(truncate_above(F, N)) + spectral_l2_norm_sq(tail_above(F, N))
        assert parts == pytest.approx(total, rel=1e-10)
    assert total == pytest.approx(integrate(ScalarField(grid, f.values**2)), rel=1e-12)


def test_cutoff_bounds_enforced(grid):
    F = to_spectral(random_field(grid))
    for bad in (0, grid.N_x // 2, grid.N_x):
        with pytest.raises(ValueError):
            truncate_above(F, bad)
        with pytest.raises(ValueError):
            tail_above(F, bad)
