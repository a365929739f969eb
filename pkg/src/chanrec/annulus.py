"""The annulus contrast: zero vorticity with non-zero gradient norm.

The swirl (u, v) = (-y, x) / (x^2 + y^2) is an irrotational steady
Euler solution on any annulus R1 <= r <= R2.  Its enstrophy vanishes
while its squared H^1 seminorm is 2 pi (R1^-2 - R2^-2) > 0, so on the
annulus the enstrophy does not control the gradient norm and the
channel recurrence argument has no footing.  Everything here is coded
from closed forms; quadrature enters only to integrate them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AnnulusSpec:
    R1: float
    R2: float
    N_r: int = 512
    N_theta: int = 256

    def __post_init__(self) -> None:
        if not (0.0 < self.R1 < self.R2):
            raise ValueError("radii must satisfy 0 < R1 < R2")
        if self.N_r < 8 or self.N_theta < 8:
            raise ValueError("quadrature resolutions must be at least 8")

    def nodes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Midpoint-rule nodes (x, y) and weights r*dr*dtheta."""
        dr = (self.R2 - self.R1) / self.N_r
        dth = 2.0 * np.pi / self.N_theta
        r = self.R1 + (np.arange(self.N_r) + 0.5) * dr
        th = (np.arange(self.N_theta) + 0.5) * dth
        R, TH = np.meshgrid(r, th, indexing="ij")
        x = R * np.cos(TH)
        y = R * np.sin(TH)
        w = R * dr * dth
        return x, y, w


def pr_field(x, y):
    """(u, v) = (-y, x) / (x^2 + y^2); undefined at the origin."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x**2 + y**2
    if np.any(r2 == 0.0):
        raise ValueError("the swirl field is singular at the origin")
    return -y / r2, x / r2


def pr_gradients(x, y):
    """Analytic first partials (u_x, u_y, v_x, v_y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x**2 + y**2
    if np.any(r2 == 0.0):
        raise ValueError("the swirl field is singular at the origin")
    r4 = r2**2
    u_x = 2.0 * x * y / r4
    u_y = (2.0 * y**2 - r2) / r4
    v_x = (r2 - 2.0 * x**2) / r4
    v_y = -2.0 * x * y / r4
    return u_x, u_y, v_x, v_y


def pr_vorticity_check(spec: AnnulusSpec) -> float:
    """max |v_x - u_y| over the quadrature nodes (zero up to rounding)."""
    x, y, _ = spec.nodes()
    _, u_y, v_x, _ = pr_gradients(x, y)
    return float(np.max(np.abs(v_x - u_y)))


def pr_enstrophy(spec: AnnulusSpec) -> float:
    """Quadrature of the squared vorticity over the annulus."""
    x, y, w = spec.nodes()
    _, u_y, v_x, _ = pr_gradients(x, y)
    return float(np.sum((v_x - u_y) ** 2 * w))


def pr_h1_seminorm_sq(spec: AnnulusSpec) -> float:
    """Quadrature of u_x^2 + u_y^2 + v_x^2 + v_y^2 (analytically 2/r^4)."""
    x, y, w = spec.nodes()
    u_x, u_y, v_x, v_y = pr_gradients(x, y)
    return float(np.sum((u_x**2 + u_y**2 + v_x**2 + v_y**2) * w))


def pr_h1_closed_form(spec: AnnulusSpec) -> float:
    """2 pi (R1^-2 - R2^-2), the exact integral of 2/r^4 over the annulus."""
    return float(2.0 * np.pi * (spec.R1**-2 - spec.R2**-2))


def pr_convective_acceleration(x, y):
    """(u . grad)(u, v) assembled from the analytic first partials."""
    u, v = pr_field(x, y)
    u_x, u_y, v_x, v_y = pr_gradients(x, y)
    return u * u_x + v * u_y, u * v_x + v * v_y


def pr_steadiness_residual(spec: AnnulusSpec) -> float:
    """max |curl of the convective acceleration| over the nodes.

    The acceleration of a steady Euler flow is -grad(p), so its curl
    must vanish; all second partials are closed forms, so the residual
    is pure rounding.
    """
    x, y, _ = spec.nodes()
    u, v = pr_field(x, y)
    u_x, u_y, v_x, v_y = pr_gradients(x, y)
    r2 = x**2 + y**2
    r4 = r2**2
    r6 = r2**3
    u_xy = 2.0 * x / r4 - 8.0 * x * y**2 / r6
    u_yy = 6.0 * y / r4 - 8.0 * y**3 / r6
    v_xx = -6.0 * x / r4 + 8.0 * x**3 / r6
    v_xy = -2.0 * y / r4 + 8.0 * x**2 * y / r6
    # curl(A) with A = (u u_x + v u_y, u v_x + v v_y)
    dAy_dx = u_x * v_x + u * v_xx + v_x * v_y + v * v_xy
    dAx_dy = u_y * u_x + u * u_xy + v_y * u_y + v * u_yy
    return float(np.max(np.abs(dAy_dx - dAx_dy)))


def annulus_report(spec: AnnulusSpec) -> dict:
    """All the contrast numbers in one place, for the CLI table."""
    h1 = pr_h1_seminorm_sq(spec)
    exact = pr_h1_closed_form(spec)
    return {
        "R1": spec.R1,
        "R2": spec.R2,
        "max_abs_vorticity": pr_vorticity_check(spec),
        "enstrophy": pr_enstrophy(spec),
        "h1_seminorm_sq": h1,
        "h1_closed_form": exact,
        "h1_relative_error": abs(h1 - exact) / exact,
        "steadiness_residual": pr_steadiness_residual(spec),
    }
