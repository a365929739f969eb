"""Solver dynamics: velocity reconstruction, tendencies, stepping, runs."""

import numpy as np
import pytest

from chanrec import (
    CFLViolationError,
    ChannelGrid,
    EulerSolver,
    ScalarField,
    SolverBlowupError,
    SolverConfig,
    State,
    VectorField,
    galilean_reduce,
    initial_state,
    kinetic_energy,
    mean_value,
    scalar_l2_norm,
    velocity_from_vorticity,
)
from chanrec.fields import field_from_function
from oracles import observed_orders


def grid_for(ny=33, nx=32):
    return ChannelGrid(L_x=2 * np.pi, a=0.0, b=np.pi, N_x=nx, N_y=ny)


class TestVelocityFromVorticity:
    def test_manufactured_velocity_converges(self):
        errs_u, errs_v = [], []
        for ny in (17, 33, 65):
            g = grid_for(ny)
            omega = field_from_function(g, lambda X, Y: (1 + g.alpha**2) * np.sin(g.alpha * X) * np.sin(Y))
            vel = velocity_from_vorticity(omega)
            u_ex = field_from_function(g, lambda X, Y: np.sin(g.alpha * X) * np.cos(Y))
            v_ex = field_from_function(g, lambda X, Y: -g.alpha * np.cos(g.alpha * X) * np.sin(Y))
            errs_u.append(np.max(np.abs(vel.u.values - u_ex.values)))
            errs_v.append(np.max(np.abs(vel.v.values - v_ex.values)))
        for order in observed_orders(errs_u) + observed_orders(errs_v):
            assert 1.8 <= order <= 2.2

    def test_zero_vorticity_zero_velocity(self):
        g = grid_for()
        vel = velocity_from_vorticity(field_from_function(g, lambda X, Y: np.zeros_like(X)))
        assert np.max(np.abs(vel.u.values)) < 1e-14
        assert np.max(np.abs(vel.v.values)) == 0.0

    def test_mean_mode_shear(self):
        g = grid_for(ny=65)
        vel = velocity_from_vorticity(field_from_function(g, lambda X, Y: np.sin(Y)))
        u_ex = field_from_function(g, lambda X, Y: np.cos(Y))
        # one-sided wall stencils carry the largest O(h^2) constant
        assert np.max(np.abs(vel.u.values - u_ex.values)) < 2e-3
        assert np.max(np.abs(vel.v.values)) == 0.0

    def test_wall_rows_bitwise_zero_and_divergence_small(self):
        g = grid_for(ny=65, nx=64)
        rng = np.random.default_rng(3)
        from chanrec.presets import random_series

        omega = random_series(g.L_x, g.a, g.b, seed=5, max_mode=5).vorticity(g)
        vel = velocity_from_vorticity(omega)
        assert np.all(vel.v.values[:, 0] == 0.0)
        assert np.all(vel.v.values[:, -1] == 0.0)
        from chanrec import ddy, integrate
        from chanrec.spectral import ddx

        div = ddx(vel.u).values + ddy(vel.v).values
        div_norm = np.sqrt(integrate(ScalarField(g, div**2)))
        assert div_norm < 5e-3 * np.sqrt(kinetic_energy(vel))

    def test_zero_mean_gauge_exact(self):
        g = grid_for(ny=33, nx=32)
        from chanrec.presets import random_series

        omega = random_series(g.L_x, g.a, g.b, seed=8, max_mode=4).vorticity(g)
        vel = velocity_from_vorticity(omega)
        scale = np.sqrt(kinetic_energy(vel) / g.area)
        assert abs(mean_value(vel.u)) <= 1e-13 * scale


class TestGalileanReduce:
    def test_constant_plus_profile(self):
        g = grid_for(ny=65)
        u = field_from_function(g, lambda X, Y: 2.0 + np.cos(Y))
        v = field_from_function(g, lambda X, Y: np.zeros_like(X))
        reduced, mean_u = galilean_reduce(VectorField(g, u, v))
        assert mean_u == pytest.approx(2.0, abs=1e-12)
        expected = field_from_function(g, lambda X, Y: np.cos(Y))
        assert np.max(np.abs(reduced.u.values - expected.values)) < 1e-12

    def test_zero_field(self):
        g = grid_for()
        zero = field_from_function(g, lambda X, Y: np.zeros_like(X))
        _, mean_u = galilean_reduce(VectorField(g, zero, zero))
        assert mean_u == 0.0

    @pytest.mark.parametrize("seed", range(3))
    def test_remeasured_mean_vanishes(self, seed):
        g = grid_for()
        rng = np.random.default_rng(seed)
        vel = VectorField.from_arrays(g, rng.standard_normal(g.shape), rng.standard_normal(g.shape))
        reduced, _ = galilean_reduce(vel)
        scale = np.sqrt(kinetic_energy(vel) / g.area)
        assert abs(mean_value(reduced.u)) <= 1e-12 * scale


class TestRhs:
    def test_steady_shear_rhs_zero(self):
        g = grid_for()
        state = initial_state(g, {"preset": "shear"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        tend = solver.rhs(state)
        assert np.max(np.abs(tend.values)) < 1e-12

    def test_eigenstate_rhs_residual_second_order(self):
        """An eigenstate is analytically steady; the discrete residual is
        pure truncation of the skew-averaged y advection and decays at
        the scheme's order."""
        res = []
        for ny in (33, 65, 129):
            g = grid_for(ny=ny, nx=64)
            state = initial_state(g, {"preset": "eigenstate"})
            solver = EulerSolver(g, SolverConfig(t_end=1.0))
            res.append(scalar_l2_norm(solver.rhs(state)) / scalar_l2_norm(state.omega))
        for order in observed_orders(res):
            assert 1.8 <= order <= 2.2

    def test_mean_flow_advects_pattern(self):
        """With a stored mean, the rhs gains exactly -mean_u * d(omega)/dx."""
        g = grid_for(ny=65, nx=64)
        base = initial_state(g, {"preset": "eigenstate"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        tend0 = solver.rhs(base)
        c = 0.7
        tend_c = solver.rhs(State(t=0.0, omega=base.omega, mean_u=c))
        from chanrec.spectral import ddx

        expected = tend0.values - c * ddx(base.omega).values
        assert np.max(np.abs(tend_c.values - expected)) < 1e-11


class TestStep:
    def test_steady_shear_unchanged(self):
        g = grid_for()
        state = initial_state(g, {"preset": "shear"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        new = solver.step(state, 0.01)
        assert np.max(np.abs(new.omega.values - state.omega.values)) < 1e-12
        assert new.t == pytest.approx(0.01)

    def test_dt_zero_rejected(self):
        g = grid_for()
        state = initial_state(g, {"preset": "shear"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        with pytest.raises(ValueError):
            solver.step(state, 0.0)

    def test_cfl_violation_raises(self):
        g = grid_for()
        state = initial_state(g, {"preset": "eigenstate"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0, cfl=0.4))
        bound = solver.cfl_dt(state)
        with pytest.raises(CFLViolationError):
            solver.step(state, 10.0 * bound)
        solver.step(state, 0.99 * bound)

    def test_fixed_dt_skips_cfl_check(self):
        g = grid_for()
        state = initial_state(g, {"preset": "eigenstate"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0, cfl=None, fixed_dt=0.5))
        solver.step(state, 0.5)

    def test_temporal_self_convergence_fourth_order(self):
        g = grid_for()
        state0 = initial_state(g, {"preset": "random", "seed": 5, "max_mode": 3})
        def advance(dt):
            solver = EulerSolver(g, SolverConfig(t_end=0.5, fixed_dt=dt))
            return solver.run(state0).omega.values
        ref = advance(1 / 512)
        errs = [np.sqrt(np.mean((advance(dt) - ref) ** 2)) for dt in (1 / 8, 1 / 16, 1 / 32)]
        for order in observed_orders(errs):
            assert 3.7 <= order <= 4.3


class TestRun:
    def test_zero_t_end_returns_reduced_initial(self):
        g = grid_for()
        u = field_from_function(g, lambda X, Y: 1.5 + np.cos(Y))
        v = field_from_function(g, lambda X, Y: np.zeros_like(X))
        solver = EulerSolver(g, SolverConfig(t_end=0.0))
        records = []
        final = solver.run(VectorField(g, u, v), diagnostics_sink=records.append)
        assert final.t == 0.0
        assert final.mean_u == pytest.approx(1.5, abs=1e-12)
        assert len(records) == 1

    def test_steady_shear_long_run(self):
        g = grid_for(ny=65, nx=64)
        state0 = initial_state(g, {"preset": "shear"})
        solver = EulerSolver(g, SolverConfig(t_end=10.0, record_every=100))
        final = solver.run(state0)
        drift = scalar_l2_norm(final.omega - state0.omega) / scalar_l2_norm(state0.omega)
        assert drift <= 1e-6

    def test_mean_v_and_mean_u_invariants(self):
        g = grid_for(ny=33, nx=32)
        state0 = initial_state(g, {"preset": "random", "seed": 4, "max_mode": 3})
        records = []
        solver = EulerSolver(g, SolverConfig(t_end=1.0, record_every=5))
        solver.run(state0, diagnostics_sink=records.append)
        scale = np.sqrt(records[0].E / g.area)
        for rec in records:
            assert abs(rec.mean_v) <= 1e-12 * max(scale, 1.0)
            assert abs(rec.mean_u - records[0].mean_u) <= 1e-10 * max(scale, 1.0)

    def test_snapshot_times_landed_exactly(self):
        g = grid_for()
        state0 = initial_state(g, {"preset": "random", "seed": 4, "max_mode": 3})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        seen = []
        solver.run(state0, snapshot_times=[0.0, 0.3337, 1.0], snapshot_sink=lambda i, st, vel: seen.append((i, st.t)))
        assert [i for i, _ in seen] == [0, 1, 2]
        assert seen[1][1] == 0.3337
        assert seen[2][1] == 1.0

    def test_snapshot_times_outside_range_rejected(self):
        g = grid_for()
        state0 = initial_state(g, {"preset": "shear"})
        solver = EulerSolver(g, SolverConfig(t_end=1.0))
        with pytest.raises(ValueError):
            solver.run(state0, snapshot_times=[2.0])

    def test_time_reversal_recovers_initial(self):
        """The discrete tendency satisfies f(-w) = f(w), so negating the
        vorticity and advancing again retraces the orbit; only the RK4
        time asymmetry remains.  The advection operator conserves
        enstrophy to rounding, so the forward drift is measured as the
        forward leg's temporal self-error (G drift sits at the rounding
        floor and no longer reflects the scheme's error)."""
        g = grid_for(ny=33, nx=32)
        state0 = initial_state(g, {"preset": "random", "seed": 6, "max_mode": 3})
        cfg = SolverConfig(t_end=1.0, fixed_dt=1 / 64, record_every=1000)
        fwd_records = []
        fwd = EulerSolver(g, cfg).run(state0, diagnostics_sink=fwd_records.append)
        back = EulerSolver(g, cfg).run(State(t=0.0, omega=-fwd.omega, mean_u=-fwd.mean_u))
        err = scalar_l2_norm(back.omega - (-state0.omega)) / scalar_l2_norm(state0.omega)
        ref = EulerSolver(g, SolverConfig(t_end=1.0, fixed_dt=1 / 512)).run(state0)
        forward_drift = scalar_l2_norm(fwd.omega - ref.omega) / scalar_l2_norm(state0.omega)
        g_drift = abs(fwd_records[-1].G - fwd_records[0].G) / fwd_records[0].G
        assert err <= 10.0 * max(forward_drift, g_drift, 1e-12)

    def test_blowup_aborts_with_partial_diagnostics(self):
        """A violently under-resolved field trips the enstrophy guard."""
        g = ChannelGrid(L_x=2 * np.pi, a=0.0, b=np.pi, N_x=32, N_y=17)
        state0 = initial_state(g, {"preset": "random", "seed": 0, "max_mode": 10, "amplitude": 4.0})
        records = []
        solver = EulerSolver(g, SolverConfig(t_end=20.0, dealias=False, record_every=1))
        with pytest.raises(SolverBlowupError):
            solver.run(state0, diagnostics_sink=records.append)
        assert len(records) >= 1


class TestSolverConfig:
    def test_exactly_one_governor(self):
        with pytest.raises(ValueError):
            SolverConfig(t_end=1.0, cfl=None, fixed_dt=None)
        assert SolverConfig(t_end=1.0, cfl=0.4).governs == "cfl"
        assert SolverConfig(t_end=1.0, fixed_dt=0.1).governs == "fixed"

    def test_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(t_end=-1.0)
        with pytest.raises(ValueError):
            SolverConfig(t_end=1.0, cfl=1.5)
        with pytest.raises(ValueError):
            SolverConfig(t_end=1.0, fixed_dt=-0.1)
        with pytest.raises(ValueError):
            SolverConfig(t_end=1.0, record_every=0)
