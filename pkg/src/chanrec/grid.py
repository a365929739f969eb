"""Channel geometry and discretization.

The domain is the channel cell [0, L_x] x [a, b]: periodic in x with
period L_x, walls at y = a and y = b.  x is discretized by N_x evenly
spaced collocation points (no duplicated column at x = L_x); y by N_y
uniform points including both walls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GridMismatchError(ValueError):
    """Raised when fields on incompatible grids are combined."""


@dataclass(frozen=True, eq=True)
class ChannelGrid:
    """Geometry and resolution of the channel cell.

    Parameters
    ----------
    L_x : float
        Stream-wise period, > 0.
    a, b : float
        Wall positions, b > a.
    N_x : int
        Number of x collocation points, even and positive.
    N_y : int
        Number of y grid points (wall-inclusive), >= 3.

    Derived attributes (not part of equality): ``alpha`` = 2*pi/L_x,
    ``h_x``, ``h_y``, coordinate arrays ``x`` (N_x,) and ``y`` (N_y,),
    mode numbers ``n`` (N_x//2+1,), and the x-Parseval weights
    ``mode_weights`` (1 for n = 0 and the Nyquist mode, 2 otherwise).
    """

    L_x: float
    a: float
    b: float
    N_x: int
    N_y: int

    def __post_init__(self) -> None:
        if not (self.L_x > 0):
            raise ValueError("L_x must be positive")
        if not (self.b > self.a):
            raise ValueError("wall positions must satisfy b > a")
        if self.N_x <= 0 or self.N_x % 2 != 0:
            raise ValueError("N_x must be a positive even integer")
        if self.N_y < 3:
            raise ValueError("N_y must be at least 3")

        object.__setattr__(self, "alpha", 2.0 * np.pi / self.L_x)
        object.__setattr__(self, "h_x", self.L_x / self.N_x)
        object.__setattr__(self, "h_y", (self.b - self.a) / (self.N_y - 1))

        x = np.arange(self.N_x) * self.h_x
        y = np.linspace(self.a, self.b, self.N_y)
        n = np.arange(self.N_x // 2 + 1)
        weights = np.full(self.N_x // 2 + 1, 2.0)
        weights[0] = 1.0
        weights[-1] = 1.0
        for name, arr in (("x", x), ("y", y), ("n", n), ("mode_weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def area(self) -> float:
        return self.L_x * (self.b - self.a)

    @property
    def shape(self) -> tuple[int, int]:
        """Physical array shape, x-major: (N_x, N_y)."""
        return (self.N_x, self.N_y)

    @property
    def spectral_shape(self) -> tuple[int, int]:
        """Mode array shape: (N_x//2 + 1, N_y)."""
        return (self.N_x // 2 + 1, self.N_y)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays X, Y of shape (N_x, N_y)."""
        return np.meshgrid(self.x, self.y, indexing="ij")


def ensure_same_grid(*grids: ChannelGrid) -> ChannelGrid:
    """Return the shared grid, or raise GridMismatchError.

    Fields on differing grids are never silently interpolated.
    """
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")
    return first
