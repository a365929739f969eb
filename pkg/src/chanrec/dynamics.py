"""Inviscid channel-flow dynamics in vorticity-streamfunction form.

The stream-wise mean velocity is a conserved constant; it is split off
once at initialization (Galilean reduction) and carried on the state,
while the vorticity of the zero-mean part is advanced by dealiased
pseudo-spectral RK4.  The advecting velocity always includes the
stored mean, so states evolve in the lab frame.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from . import diagnostics
from .fields import ScalarField, SpectralField, VectorField
from .grid import ChannelGrid
from .operators import ddy, mean_value, poisson_solve, poisson_solve_modes
from .spectral import dealias_cutoff, ddx_modes, to_physical, to_spectral

BLOWUP_ENSTROPHY_FACTOR = 4.0


class CFLViolationError(ValueError):
    """Requested time step exceeds the CFL bound."""


class SolverBlowupError(RuntimeError):
    """Run aborted on non-finite values or runaway enstrophy."""

    def __init__(self, message: str, state: "State | None" = None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping controls.

    Either ``cfl`` (safety factor on the advective CFL bound) or
    ``fixed_dt`` governs the step size; ``fixed_dt`` overrides when set.
    """

    t_end: float
    cfl: float | None = 0.4
    fixed_dt: float | None = None
    dealias: bool = True
    record_every: int = 1

    def __post_init__(self) -> None:
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.fixed_dt is None:
            if self.cfl is None:
                raise ValueError("one of cfl or fixed_dt must be set")
            if not (0.0 < self.cfl <= 1.0):
                raise ValueError("cfl must lie in (0, 1]")
        elif self.fixed_dt <= 0:
            raise ValueError("fixed_dt must be positive")
        if self.record_every < 1:
            raise ValueError("record_every must be a positive integer")

    @property
    def governs(self) -> str:
        return "fixed" if self.fixed_dt is not None else "cfl"


@dataclass(frozen=True)
class State:
    """Vorticity of the reduced field plus the conserved mean velocity."""

    t: float
    omega: ScalarField
    mean_u: float = 0.0


def galilean_reduce(vel: VectorField) -> tuple[VectorField, float]:
    """Split off the spatial mean of u: returns (reduced field, mean_u).

    v is untouched; its mean is already zero for any field produced by
    the solver.
    """
    mean_u = mean_value(vel.u)
    reduced = VectorField(vel.grid, vel.u - ScalarField(vel.grid, np.full(vel.grid.shape, mean_u)), vel.v)
    return reduced, mean_u


def vorticity_of(vel: VectorField) -> ScalarField:
    """omega = dv/dx - du/dy."""
    from .spectral import ddx

    return ddx(vel.v) - ddy(vel.u)


def velocity_from_vorticity(omega: ScalarField) -> VectorField:
    """Zero-mean velocity induced by omega: u = d(psi)/dy, v = -d(psi)/dx.

    The streamfunction wall rows are exact zeros, so v is bitwise zero
    at both walls.  The quadrature mean of u (an O(h^2) gauge artifact
    of differencing psi) is subtracted, so the zero-flux gauge holds to
    rounding, not merely to discretization order; the conserved mean
    flow lives on State.mean_u, never in this field.
    """
    grid = omega.grid
    psi = poisson_solve(omega)
    u = ddy(psi)
    u_vals = u.values - mean_value(u)
    F = to_spectral(psi)
    v = to_physical(SpectralField(grid, -ddx_modes(grid, F.modes)))
    return VectorField(grid, ScalarField(grid, u_vals), v)


def _tendency(
    grid: ChannelGrid, omega_vals: np.ndarray, mean_u: float, dealias: bool, return_speed: bool = False
):
    """Advection tendency -(u + mean_u) d(omega)/dx - v d(omega)/dy.

    The x term is convective with pseudo-spectral products; the y term
    is the skew-symmetric average (half convective, half flux form,
    with the omega dv/dy compensation), which is the same second-order
    operator but discretely antisymmetric in the enstrophy inner
    product away from the walls.  Plain centered convective advection
    in y pumps grid-scale enstrophy with nothing to check it (x has
    the dealias filter, y has none) and long turbulent runs abort on
    runaway enstrophy; the skew average removes that pumping without
    adding any dissipation.  For band-limited fields the x term is
    unaffected: the spectral product rule is exact once products are
    dealiased.

    With ``return_speed`` also reports max(|u + mean_u| + |v|), the
    advective speed that sets the CFL bound, measured on the same
    velocity the products use.
    """
    omega_modes = np.fft.rfft(omega_vals, axis=0) / grid.N_x
    psi_modes = poisson_solve_modes(grid, omega_modes)
    if dealias:
        cut = dealias_cutoff(grid)
        omega_modes[cut + 1 :, :] = 0.0
        psi_modes[cut + 1 :, :] = 0.0

    stack = np.empty((4,) + omega_modes.shape, dtype=complex)
    stack[0] = omega_modes
    stack[1] = ddx_modes(grid, omega_modes)
    stack[2] = psi_modes
    stack[3] = -ddx_modes(grid, psi_modes)
    om_phys, om_x, psi_phys, v = np.fft.irfft(stack * grid.N_x, n=grid.N_x, axis=1)
    if not dealias:
        om_phys = omega_vals

    h = grid.h_y

    def fd_y(p: np.ndarray) -> np.ndarray:
        d = np.empty_like(p)
        d[:, 1:-1] = (p[:, 2:] - p[:, :-2]) / (2.0 * h)
        d[:, 0] = (-3.0 * p[:, 0] + 4.0 * p[:, 1] - p[:, 2]) / (2.0 * h)
        d[:, -1] = (3.0 * p[:, -1] - 4.0 * p[:, -2] + p[:, -3]) / (2.0 * h)
        return d

    u = fd_y(psi_phys)
    wy = np.full(grid.N_y, grid.h_y)
    wy[0] *= 0.5
    wy[-1] *= 0.5
    u -= grid.h_x * (u @ wy).sum() / grid.area  # same zero-mean gauge as velocity_from_vorticity

    om_y = fd_y(om_phys)
    u_total = u + mean_u
    # product-rule defect of the y differencing; adding half of it back
    # makes the y advection discretely antisymmetric in the enstrophy
    # inner product, so quadratic invariants stop being pumped at grid
    # scale.  At the walls v = 0 makes the defect vanish identically for
    # every admissible field, so the one-sided rows are set to that
    # exact limit; with this closure the discrete enstrophy budget of
    # the advection operator cancels to rounding.
    defect = fd_y(v * om_phys) - v * om_y - om_phys * fd_y(v)
    defect[:, 0] = 0.0
    defect[:, -1] = 0.0
    tend = -u_total * om_x - v * om_y - 0.5 * defect
    if dealias:
        tend_modes = np.fft.rfft(tend, axis=0)
        tend_modes[dealias_cutoff(grid) + 1 :, :] = 0.0
        tend = np.fft.irfft(tend_modes, n=grid.N_x, axis=0)
    if return_speed:
        speed = float(np.max(np.abs(u + mean_u) + np.abs(v)))
        return tend, speed
    return tend


class EulerSolver:
    """Dealiased pseudo-spectral RK4 integrator for the channel flow."""

    def __init__(self, grid: ChannelGrid, config: SolverConfig):
        self.grid = grid
        self.config = config

    def rhs(self, state: State) -> ScalarField:
        """d(omega)/dt at the given state."""
        vals = _tendency(self.grid, state.omega.values, state.mean_u, self.config.dealias)
        return ScalarField(self.grid, vals)

    def cfl_dt(self, state: State) -> float:
        """CFL-limited step: cfl * min(h_x, h_y) / max(|u_total| + |v|)."""
        vel = velocity_from_vorticity(state.omega)
        speed = float(np.max(np.abs(vel.u.values + state.mean_u) + np.abs(vel.v.values)))
        cfl = self.config.cfl if self.config.cfl is not None else 0.4
        if speed == 0.0:
            return np.inf
        return cfl * min(self.grid.h_x, self.grid.h_y) / speed

    def step(self, state: State, dt: float) -> State:
        """One classical RK4 step; validates dt against the CFL bound."""
        if not (dt > 0.0):
            raise ValueError("dt must be positive")
        if self.config.governs == "cfl" and dt > self.cfl_dt(state) * (1.0 + 1e-9):
            raise CFLViolationError(f"dt={dt} exceeds CFL bound at t={state.t}")
        return self._rk4(state, dt)

    def _rk4(self, state: State, dt: float, k1: np.ndarray | None = None) -> State:
        grid, mu, dealias = self.grid, state.mean_u, self.config.dealias
        w0 = state.omega.values
        if k1 is None:
            k1 = _tendency(grid, w0, mu, dealias)
        k2 = _tendency(grid, w0 + 0.5 * dt * k1, mu, dealias)
        k3 = _tendency(grid, w0 + 0.5 * dt * k2, mu, dealias)
        k4 = _tendency(grid, w0 + dt * k3, mu, dealias)
        w1 = w0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(w1).all():
            raise SolverBlowupError(f"non-finite vorticity after step at t={state.t}", state)
        return State(t=state.t + dt, omega=ScalarField(grid, w1), mean_u=mu)

    def run(
        self,
        initial: VectorField | ScalarField | State,
        diagnostics_sink: Callable[[diagnostics.DiagnosticsRecord], None] | None = None,
        snapshot_times: Sequence[float] = (),
        snapshot_sink: Callable[[int, State, VectorField], None] | None = None,
    ) -> State:
        """Advance to t_end, emitting diagnostics and exact-time snapshots.

        ``initial`` is the vorticity directly (mean_u = 0), a velocity
        field (Galilean-reduced first, then curled), or a prepared
        State whose clock restarts at 0.  Steps land exactly on every
        requested snapshot time and on t_end.  On blow-up the sinks
        have already received everything computed so far and
        SolverBlowupError carries the last state.
        """
        cfg = self.config
        if isinstance(initial, VectorField):
            reduced, mean_u = galilean_reduce(initial)
            omega = vorticity_of(reduced)
            state = State(t=0.0, omega=omega, mean_u=mean_u)
        elif isinstance(initial, State):
            state = replace(initial, t=0.0)
        else:
            state = State(t=0.0, omega=initial, mean_u=0.0)

        events = sorted(set(float(ts) for ts in snapshot_times))
        if events and (events[0] < 0.0 or events[-1] > cfg.t_end):
            raise ValueError("snapshot times must lie within [0, t_end]")

        g0 = diagnostics.enstrophy_from_omega(state.omega)
        snap_i = 0

        def emit_diag(st: State) -> None:
            if diagnostics_sink is not None:
                diagnostics_sink(diagnostics.solver_record(st))

        def emit_snaps(st: State) -> None:
            nonlocal snap_i
            while snap_i < len(events) and events[snap_i] <= st.t + 1e-12 * max(1.0, abs(st.t)):
                if snapshot_sink is not None:
                    snapshot_sink(snap_i, st, velocity_from_vorticity(st.omega))
                snap_i += 1

        emit_diag(state)
        emit_snaps(state)

        steps = 0
        recorded_at = state.t
        cfl = cfg.cfl if cfg.cfl is not None else 0.4
        min_h = min(self.grid.h_x, self.grid.h_y)
        while state.t < cfg.t_end * (1.0 - 1e-15) and cfg.t_end > 0.0:
            k1, speed = _tendency(self.grid, state.omega.values, state.mean_u, cfg.dealias, return_speed=True)
            if cfg.fixed_dt is not None:
                dt_gov = cfg.fixed_dt
            else:
                dt_gov = cfl * min_h / speed if speed > 0.0 else np.inf
            next_stop = events[snap_i] if snap_i < len(events) else cfg.t_end
            next_stop = min(next_stop, cfg.t_end)
            land = next_stop - state.t <= dt_gov * (1.0 + 1e-12)
            dt = next_stop - state.t if land else dt_gov
            state = self._rk4(state, dt, k1=k1)
            if land:
                state = replace(state, t=next_stop)
            steps += 1

            g = diagnostics.enstrophy_from_omega(state.omega)
            blowup = g0 > 0.0 and g > BLOWUP_ENSTROPHY_FACTOR * g0
            emit_snaps(state)
            if steps % cfg.record_every == 0 or state.t >= cfg.t_end or blowup:
                emit_diag(state)
                recorded_at = state.t
            if blowup:
                raise SolverBlowupError(
                    f"enstrophy grew past {BLOWUP_ENSTROPHY_FACTOR}x initial at t={state.t}", state
                )

        if recorded_at != state.t:
            emit_diag(state)
        return state
