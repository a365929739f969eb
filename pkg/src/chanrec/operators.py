"""Wall-normal differencing, quadrature, norms, and the per-mode Poisson solve.

y uses second-order finite differences on the uniform wall-inclusive
grid; quadrature is the rectangle rule in x (spectrally exact for
band-limited integrands over the period) and composite trapezoid in y.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fields import ScalarField, SpectralField, VectorField
from .grid import ChannelGrid, ensure_same_grid
from .spectral import to_physical, to_spectral


def ddy(f: ScalarField) -> ScalarField:
    """Second-order y derivative: centered interior, one-sided at walls.

    Exact for polynomials of degree <= 2.
    """
    v = f.values
    h = f.grid.h_y
    out = np.empty_like(v)
    out[:, 1:-1] = (v[:, 2:] - v[:, :-2]) / (2.0 * h)
    out[:, 0] = (-3.0 * v[:, 0] + 4.0 * v[:, 1] - v[:, 2]) / (2.0 * h)
    out[:, -1] = (3.0 * v[:, -1] - 4.0 * v[:, -2] + v[:, -3]) / (2.0 * h)
    return ScalarField(f.grid, out)


def integrate(f: ScalarField) -> float:
    """Integral over [0, L_x] x [a, b]: rectangle in x, trapezoid in y."""
    grid = f.grid
    wy = np.full(grid.N_y, grid.h_y)
    wy[0] *= 0.5
    wy[-1] *= 0.5
    return float(grid.h_x * (f.values @ wy).sum())


def mean_value(f: ScalarField) -> float:
    """Spatial average over the channel cell."""
    return integrate(f) / f.grid.area


def l2_inner(f: VectorField, g: VectorField) -> float:
    """L2 inner product of velocity fields: integral of f.u g.u + f.v g.v."""
    ensure_same_grid(f.grid, g.grid)
    integrand = f.u.values * g.u.values + f.v.values * g.v.values
    return integrate(ScalarField(f.grid, integrand))


def l2_norm(f: VectorField) -> float:
    """L2 norm of a velocity field (the H^0 metric of the channel)."""
    return float(np.sqrt(max(l2_inner(f, f), 0.0)))


def scalar_l2_norm(f: ScalarField) -> float:
    return float(np.sqrt(max(integrate(ScalarField(f.grid, f.values**2)), 0.0)))


@lru_cache(maxsize=8)
def _poisson_inverse_ops(grid: ChannelGrid) -> np.ndarray:
    """Factor the per-mode tridiagonal systems psi_n'' - (n alpha)^2 psi_n = rhs.

    Interior system with Dirichlet walls eliminated: sub = sup = 1/h^2,
    diag_n = -2/h^2 - (n alpha)^2.  The Thomas pivot recurrence is run
    first purely as a singularity assertion (the matrices are
    diagonally dominant, so this cannot trip, but assert anyway); the
    returned operator is the stack of dense inverses, shape
    (N_x/2+1, N_y-2, N_y-2), applied per solve as one batched matmul.
    """
    m = grid.N_y - 2
    h2 = grid.h_y**2
    off = 1.0 / h2
    diag = -2.0 / h2 - (grid.n.astype(float) * grid.alpha) ** 2  # (n_modes,)

    pivot = diag.copy()
    if np.any(pivot == 0.0):
        raise ArithmeticError("singular tridiagonal pivot in Poisson solve")
    for _ in range(1, m):
        pivot = diag - off * (off / pivot)
        if np.any(pivot == 0.0):
            raise ArithmeticError("singular tridiagonal pivot in Poisson solve")

    ops = np.empty((grid.N_x // 2 + 1, m, m))
    base = np.zeros((m, m))
    idx = np.arange(m - 1)
    base[idx, idx + 1] = off
    base[idx + 1, idx] = off
    for i, d in enumerate(diag):
        tri = base.copy()
        np.fill_diagonal(tri, d)
        ops[i] = np.linalg.inv(tri)
    ops.setflags(write=False)
    return ops


def poisson_solve_modes(grid: ChannelGrid, omega_modes: np.ndarray) -> np.ndarray:
    """Solve psi_n'' - (n alpha)^2 psi_n = -omega_n, psi_n(a) = psi_n(b) = 0.

    Wall rows of the result are exact zeros.
    """
    ops = _poisson_inverse_ops(grid)
    m = grid.N_y - 2
    rhs = np.ascontiguousarray(-omega_modes[:, 1:-1])
    # complex128 memory is interleaved (re, im): view as a real trailing
    # axis of length 2 so one batched real matmul solves both parts
    sol = ops @ rhs.view(np.float64).reshape(-1, m, 2)
    psi = np.zeros_like(omega_modes)
    psi[:, 1:-1] = np.ascontiguousarray(sol).view(np.complex128).reshape(-1, m)
    return psi


def poisson_solve(omega: ScalarField) -> ScalarField:
    """Streamfunction psi with Laplacian(psi) = -omega and psi = 0 on both walls.

    Per x mode, a second-order tridiagonal two-point boundary value
    solve; zero Dirichlet values on both walls encode the zero-flux
    gauge consistent with a zero mean stream-wise velocity.
    """
    F = to_spectral(omega)
    psi_modes = poisson_solve_modes(omega.grid, F.modes)
    psi = to_physical(SpectralField(omega.grid, psi_modes))
    values = psi.values.copy()
    values[:, 0] = 0.0
    values[:, -1] = 0.0
    return ScalarField(omega.grid, values)
