"""Independent closed-form oracles for the test suite.

Everything here reduces integrals of finite trigonometric series to
coefficient sums by orthogonality, entirely apart from the package's
grid quadrature, so tests can compare two genuinely different routes
to the same number.  The annulus oracle integrates with Gauss-Legendre
nodes, independent of the package's midpoint rule.
"""

from __future__ import annotations

import numpy as np

from chanrec.presets import TrigStreamFunction


def _x_weights(series: TrigStreamFunction) -> tuple[np.ndarray, np.ndarray]:
    """Squared x-factor integrals: Xc[n] = int cos^2(n a x), Xs[n] = int sin^2."""
    n_max = series.A.shape[0] - 1
    Xc = np.full(n_max + 1, series.L_x / 2.0)
    Xs = np.full(n_max + 1, series.L_x / 2.0)
    Xc[0] = series.L_x
    Xs[0] = 0.0
    return Xc, Xs


def _mode_grids(series: TrigStreamFunction) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(series.A.shape[0])[:, None] * series.alpha
    k = np.arange(1, series.A.shape[1] + 1)[None, :] * series.kappa
    return n, k


def series_kinetic_energy(series: TrigStreamFunction) -> float:
    """E = int (u^2 + v^2) by orthogonality."""
    Xc, Xs = _x_weights(series)
    n, k = _mode_grids(series)
    H2 = (series.b - series.a) / 2.0
    A2, B2 = series.A**2, series.B**2
    e_u = np.sum(k**2 * (A2 * Xc[:, None] + B2 * Xs[:, None])) * H2
    e_v = np.sum(n**2 * (A2 * Xs[:, None] + B2 * Xc[:, None])) * H2
    return float(e_u + e_v)


def series_enstrophy(series: TrigStreamFunction) -> float:
    """G = int omega^2, omega = (n^2 a^2 + k^2 kappa^2) * psi term-wise."""
    Xc, Xs = _x_weights(series)
    n, k = _mode_grids(series)
    H2 = (series.b - series.a) / 2.0
    lam = n**2 + k**2
    return float(np.sum(lam**2 * (series.A**2 * Xc[:, None] + series.B**2 * Xs[:, None])) * H2)


def series_h1_seminorm_sq(series: TrigStreamFunction) -> float:
    """Sum of the four squared-gradient integrals, each reduced separately."""
    Xc, Xs = _x_weights(series)
    n, k = _mode_grids(series)
    H2 = (series.b - series.a) / 2.0
    A2, B2 = series.A**2, series.B**2
    swapped = A2 * Xs[:, None] + B2 * Xc[:, None]
    straight = A2 * Xc[:, None] + B2 * Xs[:, None]
    ux = np.sum(k**2 * n**2 * swapped) * H2
    uy = np.sum(k**4 * straight) * H2
    vx = np.sum(n**4 * straight) * H2
    vy = np.sum(k**2 * n**2 * swapped) * H2
    return float(ux + uy + vx + vy)


def series_lemma1_residual(series: TrigStreamFunction) -> float:
    """Mode-exact relative gap between the H^1 seminorm and the enstrophy."""
    g = series_enstrophy(series)
    h1 = series_h1_seminorm_sq(series)
    return abs(h1 - g) / max(g, 1e-300)


def annulus_h1_gauss(R1: float, R2: float, order: int = 200) -> float:
    """Gauss-Legendre quadrature of 2/r^4 * r over [R1, R2] times 2 pi.

    Brute-force oracle for the swirl field's squared H^1 seminorm; the
    integrand is axisymmetric so the angular integral is exact.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    r = 0.5 * (R2 - R1) * nodes + 0.5 * (R1 + R2)
    w = 0.5 * (R2 - R1) * weights
    return float(2.0 * np.pi * np.sum((2.0 / r**4) * r * w))


def observed_orders(errors) -> list[float]:
    """log2 ratios of successive errors under grid doubling."""
    return [float(np.log2(errors[i] / errors[i + 1])) for i in range(len(errors) - 1)]
