"""Initial-condition presets built from finite streamfunction series.

Every preset is a truncated double trigonometric series

    psi(x, y) = sum_{n=0..n_max} sum_{k=1..k_max}
        sin(k kappa (y - a)) * (A[n,k-1] cos(n alpha x) + B[n,k-1] sin(n alpha x)),

with kappa = pi / (b - a).  The sine factor in y vanishes at both
walls, so every sampled velocity is divergence-free with zero
wall-normal component by construction, and u, v, omega all have exact
closed-form samples (no numerical differentiation enters the initial
data).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import State
from .fields import ScalarField, VectorField
from .grid import ChannelGrid


@dataclass(frozen=True)
class TrigStreamFunction:
    """Coefficients of the series above; A, B have shape (n_max+1, k_max)."""

    L_x: float
    a: float
    b: float
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self) -> None:
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if A.ndim != 2 or A.shape != B.shape:
            raise ValueError("A and B must be 2-D arrays of equal shape")
        B = B.copy()
        B[0, :] = 0.0  # sin(0 * alpha * x) contributes nothing
        A = A.copy()
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def alpha(self) -> float:
        return 2.0 * np.pi / self.L_x

    @property
    def kappa(self) -> float:
        return np.pi / (self.b - self.a)

    def _check_grid(self, grid: ChannelGrid) -> None:
        if (grid.L_x, grid.a, grid.b) != (self.L_x, self.a, self.b):
            raise ValueError("grid domain does not match the series domain")

    def _bases(self, grid: ChannelGrid):
        n_max = self.A.shape[0] - 1
        k_max = self.A.shape[1]
        n = np.arange(n_max + 1)[:, None]
        k = np.arange(1, k_max + 1)[:, None]
        CX = np.cos(n * self.alpha * grid.x[None, :])  # (n_max+1, N_x)
        SX = np.sin(n * self.alpha * grid.x[None, :])
        s = grid.y[None, :] - self.a
        SY = np.sin(k * self.kappa * s)  # (k_max, N_y)
        CY = np.cos(k * self.kappa * s)
        return CX, SX, SY, CY

    def psi(self, grid: ChannelGrid) -> ScalarField:
        self._check_grid(grid)
        CX, SX, SY, _ = self._bases(grid)
        vals = (CX.T @ self.A + SX.T @ self.B) @ SY
        return ScalarField(grid, vals)

    def velocity(self, grid: ChannelGrid, mean_u: float = 0.0) -> VectorField:
        """Sampled (u, v) = (d(psi)/dy + mean_u, -d(psi)/dx), all closed-form."""
        self._check_grid(grid)
        CX, SX, SY, CY = self._bases(grid)
        k_max = self.A.shape[1]
        kk = np.arange(1, k_max + 1) * self.kappa
        u = (CX.T @ self.A + SX.T @ self.B) @ (kk[:, None] * CY) + mean_u
        nn = np.arange(self.A.shape[0]) * self.alpha
        v = (SX.T @ (nn[:, None] * self.A) - CX.T @ (nn[:, None] * self.B)) @ SY
        return VectorField.from_arrays(grid, u, v)

    def vorticity(self, grid: ChannelGrid) -> ScalarField:
        """omega = -Laplacian(psi), sampled from the closed form."""
        self._check_grid(grid)
        CX, SX, SY, _ = self._bases(grid)
        n = np.arange(self.A.shape[0]) * self.alpha
        k = np.arange(1, self.A.shape[1] + 1) * self.kappa
        lam = n[:, None] ** 2 + k[None, :] ** 2  # (n_max+1, k_max)
        vals = (CX.T @ (lam * self.A) + SX.T @ (lam * self.B)) @ SY
        return ScalarField(grid, vals)

    def combine(self, other: "TrigStreamFunction") -> "TrigStreamFunction":
        """Coefficient-wise sum on a shared domain."""
        if (self.L_x, self.a, self.b) != (other.L_x, other.a, other.b):
            raise ValueError("cannot combine series on different domains")
        n = max(self.A.shape[0], other.A.shape[0])
        k = max(self.A.shape[1], other.A.shape[1])
        A = np.zeros((n, k))
        B = np.zeros((n, k))
        A[: self.A.shape[0], : self.A.shape[1]] += self.A
        B[: self.B.shape[0], : self.B.shape[1]] += self.B
        A[: other.A.shape[0], : other.A.shape[1]] += other.A
        B[: other.B.shape[0], : other.B.shape[1]] += other.B
        return TrigStreamFunction(self.L_x, self.a, self.b, A, B)


def shear_series(L_x: float, a: float, b: float, amplitude: float = 1.0) -> TrigStreamFunction:
    """Steady shear u = amplitude * cos(kappa (y - a)), v = 0."""
    kappa = np.pi / (b - a)
    A = np.array([[amplitude / kappa]])
    return TrigStreamFunction(L_x, a, b, A, np.zeros_like(A))


def eigenstate_series(L_x: float, a: float, b: float, amplitude: float = 1.0) -> TrigStreamFunction:
    """psi = amplitude sin(alpha x) sin(kappa (y - a)): Laplacian eigenfunction,
    an exact steady state of the channel flow."""
    A = np.zeros((2, 1))
    B = np.zeros((2, 1))
    B[1, 0] = amplitude
    return TrigStreamFunction(L_x, a, b, A, B)


def random_series(
    L_x: float, a: float, b: float, seed: int, max_mode: int = 4, amplitude: float = 1.0
) -> TrigStreamFunction:
    """Seeded random band-limited streamfunction.

    Gaussian coefficients decayed by 1/(n^2 + k^2), then rescaled so
    the root-sum-square of the coefficients equals ``amplitude``.
    """
    if max_mode < 1:
        raise ValueError("max_mode must be >= 1")
    rng = np.random.default_rng(seed)
    shape = (max_mode + 1, max_mode)
    n = np.arange(max_mode + 1)[:, None].astype(float)
    k = np.arange(1, max_mode + 1)[None, :].astype(float)
    decay = 1.0 / (n**2 + k**2)
    A = rng.standard_normal(shape) * decay
    B = rng.standard_normal(shape) * decay
    B[0, :] = 0.0
    norm = np.sqrt(np.sum(A**2) + np.sum(B**2))
    scale = amplitude / norm if norm > 0 else 0.0
    return TrigStreamFunction(L_x, a, b, A * scale, B * scale)


def initial_state(grid: ChannelGrid, spec: dict) -> State:
    """Build the t = 0 solver state for a validated preset spec.

    The vorticity is sampled from the closed form (no numerical curl),
    and any mean flow rides on State.mean_u.
    """
    name = spec["preset"]
    amplitude = float(spec.get("amplitude", 1.0))
    if name == "shear":
        series = shear_series(grid.L_x, grid.a, grid.b, amplitude)
        mean_u = 0.0
    elif name == "eigenstate":
        series = eigenstate_series(grid.L_x, grid.a, grid.b, amplitude)
        rel = float(spec.get("perturb_rel", 0.0))
        if rel > 0.0:
            # perturb_rel is relative vorticity L2 norm; normalize by
            # quadrature of the sampled fields on this grid
            from .operators import scalar_l2_norm

            noise = random_series(
                grid.L_x,
                grid.a,
                grid.b,
                seed=int(spec.get("perturb_seed", 0)),
                max_mode=int(spec.get("perturb_max_mode", 4)),
                amplitude=1.0,
            )
            scale = rel * scalar_l2_norm(series.vorticity(grid)) / scalar_l2_norm(noise.vorticity(grid))
            noise = TrigStreamFunction(grid.L_x, grid.a, grid.b, noise.A * scale, noise.B * scale)
            series = series.combine(noise)
        mean_u = 0.0
    elif name == "traveling_wave":
        series = eigenstate_series(grid.L_x, grid.a, grid.b, amplitude)
        mean_u = float(spec["c"])
    elif name == "random":
        series = random_series(
            grid.L_x,
            grid.a,
            grid.b,
            seed=int(spec["seed"]),
            max_mode=int(spec.get("max_mode", 4)),
            amplitude=amplitude,
        )
        mean_u = 0.0
    else:
        raise ValueError(f"unknown preset {name!r}")
    return State(t=0.0, omega=series.vorticity(grid), mean_u=mean_u)
