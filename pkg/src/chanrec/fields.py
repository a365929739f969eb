"""Field containers on the channel grid.

ScalarField and VectorField hold physical collocation samples
(x-major arrays of shape (N_x, N_y)); SpectralField holds the
x-Fourier coefficients f_n(y) for n = 0 .. N_x/2 with y kept in
physical space.  All containers are immutable: arrays are copied in
and marked read-only, and arithmetic returns new fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import ChannelGrid, ensure_same_grid


def _freeze(values: np.ndarray, shape: tuple[int, int], dtype) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("field values must be finite (no NaN/Inf)")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScalarField:
    """Real scalar samples on the grid, x implicitly periodic."""

    grid: ChannelGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(self.values, self.grid.shape, float))

    def __add__(self, other: "ScalarField") -> "ScalarField":
        grid = ensure_same_grid(self.grid, other.grid)
        return ScalarField(grid, self.values + other.values)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        grid = ensure_same_grid(self.grid, other.grid)
        return ScalarField(grid, self.values - other.values)

    def __mul__(self, c: float) -> "ScalarField":
        return ScalarField(self.grid, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.grid, -self.values)


@dataclass(frozen=True)
class VectorField:
    """Velocity pair (u, v) sharing one grid."""

    grid: ChannelGrid
    u: ScalarField
    v: ScalarField

    def __post_init__(self) -> None:
        ensure_same_grid(self.grid, self.u.grid, self.v.grid)

    @classmethod
    def from_arrays(cls, grid: ChannelGrid, u: np.ndarray, v: np.ndarray) -> "VectorField":
        return cls(grid, ScalarField(grid, u), ScalarField(grid, v))

    def __add__(self, other: "VectorField") -> "VectorField":
        grid = ensure_same_grid(self.grid, other.grid)
        return VectorField(grid, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "VectorField") -> "VectorField":
        grid = ensure_same_grid(self.grid, other.grid)
        return VectorField(grid, self.u - other.u, self.v - other.v)

    def __mul__(self, c: float) -> "VectorField":
        return VectorField(self.grid, self.u * c, self.v * c)

    __rmul__ = __mul__

    def __neg__(self) -> "VectorField":
        return VectorField(self.grid, -self.u, -self.v)


@dataclass(frozen=True)
class SpectralField:
    """x-Fourier coefficients f_n(y), n = 0 .. N_x/2.

    Only non-negative modes are stored; Hermitian symmetry is implicit
    because the physical field is real.  Coefficient convention:
    f(x, y) = sum_n f_n(y) exp(i n alpha x) over n = -N_x/2 .. N_x/2,
    i.e. the forward transform divides the DFT by N_x.
    """

    grid: ChannelGrid
    modes: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "modes", _freeze(self.modes, self.grid.spectral_shape, complex)
        )


def field_from_function(grid: ChannelGrid, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> ScalarField:
    """Sample fn(X, Y) on the grid."""
    X, Y = grid.meshgrid()
    return ScalarField(grid, np.asarray(fn(X, Y), dtype=float))
