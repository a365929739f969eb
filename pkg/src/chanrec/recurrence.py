"""Return-time detection over sampled trajectories.

Samples the flow at t = 0, T, ..., (M-1)T, builds a finite ball cover
of the samples in the L2 velocity metric (greedy first-fit, centers
chosen among the samples), and reports balls receiving repeated
visits.  With finitely many balls covering all M samples, pigeonhole
guarantees some ball collects at least ceil(M / n_centers) of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .diagnostics import enstrophy_from_omega, kinetic_energy
from .dynamics import EulerSolver, ScalarField, SolverBlowupError, SolverConfig, State, VectorField
from .grid import ChannelGrid, ensure_same_grid
from .operators import l2_norm


@dataclass(frozen=True)
class RecurrenceConfig:
    """Sampling period T, sample count M, ball radius delta (L2 velocity)."""

    T: float
    M: int
    delta: float

    def __post_init__(self) -> None:
        if not (self.T > 0):
            raise ValueError("sampling period T must be positive")
        if self.M < 1:
            raise ValueError("sample count M must be a positive integer")
        if not (self.delta > 0):
            raise ValueError("ball radius delta must be positive")


@dataclass(frozen=True)
class Sample:
    m: int
    t: float
    velocity: VectorField
    E: float
    G: float


@dataclass
class SnapshotStore:
    """Ordered orbit samples sharing one grid; error marks a partial run."""

    grid: ChannelGrid
    samples: list[Sample] = field(default_factory=list)
    error: str | None = None

    def append(self, sample: Sample) -> None:
        ensure_same_grid(self.grid, sample.velocity.grid)
        expected = self.samples[-1].m + 1 if self.samples else 0
        if sample.m != expected:
            raise ValueError(f"sample indices must increase from 0; expected {expected}, got {sample.m}")
        self.samples.append(sample)

    def __len__(self) -> int:
        return len(self.samples)

    def distance(self, i: int, j: int) -> float:
        return l2_norm(self.samples[i].velocity - self.samples[j].velocity)


def sample_trajectory(
    initial: VectorField | ScalarField | State,
    config: RecurrenceConfig,
    solver_config: SolverConfig,
) -> SnapshotStore:
    """Run the solver and capture velocity at t = 0, T, ..., (M-1)T.

    Time stepping lands exactly on each sample time.  If the solver
    aborts mid-run the partial store is returned with ``error`` set.
    """
    grid = initial.grid if not isinstance(initial, State) else initial.omega.grid
    times = [m * config.T for m in range(config.M)]
    effective = replace(solver_config, t_end=times[-1])
    solver = EulerSolver(grid, effective)
    store = SnapshotStore(grid)

    def sink(index: int, state: State, vel: VectorField) -> None:
        store.append(
            Sample(
                m=index,
                t=state.t,
                velocity=vel,
                E=kinetic_energy(vel),
                G=enstrophy_from_omega(state.omega),
            )
        )

    try:
        solver.run(initial, snapshot_times=times, snapshot_sink=sink)
    except SolverBlowupError as exc:
        store.error = str(exc)
    return store


@dataclass(frozen=True)
class CoverBall:
    center_index: int
    visits: tuple[int, ...]


@dataclass(frozen=True)
class CoverNet:
    """Finite delta-cover of the samples; every sample is in >= 1 visit list."""

    delta: float
    balls: tuple[CoverBall, ...]

    @property
    def n_centers(self) -> int:
        return len(self.balls)

    def max_visits(self) -> int:
        return max(len(b.visits) for b in self.balls) if self.balls else 0


def build_cover(store: SnapshotStore, delta: float) -> CoverNet:
    """Greedy first-fit cover, deterministic in the store order.

    Scanning samples in order, a sample joins the first existing
    center within delta, otherwise it becomes a new center.  Distinct
    centers are therefore >= delta apart.  Visit lists then collect
    every sample strictly within delta of each center, so a sample may
    appear in several lists but always in at least one (its assigned
    center's).
    """
    if len(store) == 0:
        raise ValueError("cannot cover an empty store")
    if not (delta > 0):
        raise ValueError("delta must be positive")
    centers: list[int] = []
    for i in range(len(store)):
        if not any(store.distance(i, c) < delta for c in centers):
            centers.append(i)
    balls = tuple(
        CoverBall(
            center_index=c,
            visits=tuple(i for i in range(len(store)) if store.distance(i, c) < delta),
        )
        for c in centers
    )
    return CoverNet(delta=delta, balls=balls)


def detect_returns(net: CoverNet, k: int = 2) -> list[CoverBall]:
    """Balls visited at least k times, in center-creation order.

    Non-empty whenever k <= ceil(M / n_centers), by pigeonhole.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    return [b for b in net.balls if len(b.visits) >= k]


def pigeonhole_bound(n_samples: int, n_centers: int) -> int:
    return math.ceil(n_samples / n_centers)


def audit_cover(store: SnapshotStore, net: CoverNet) -> dict:
    """Recompute the cover invariants from scratch.

    Checks that every sample lies strictly within delta of its
    assigned (first containing) center and that distinct centers are
    at least delta/2 apart.
    """
    covered = True
    max_assigned = 0.0
    for i in range(len(store)):
        holder = next((b for b in net.balls if i in b.visits), None)
        if holder is None:
            covered = False
            continue
        d = store.distance(i, holder.center_index)
        max_assigned = max(max_assigned, d)
        if not (d < net.delta):
            covered = False
    min_center_sep = math.inf
    centers = [b.center_index for b in net.balls]
    for idx, c1 in enumerate(centers):
        for c2 in centers[idx + 1 :]:
            min_center_sep = min(min_center_sep, store.distance(c1, c2))
    separated = min_center_sep >= net.delta / 2.0
    return {
        "covered": covered,
        "max_assigned_distance": max_assigned,
        "min_center_separation": min_center_sep,
        "separated": separated,
        "passed": covered and separated,
    }


def closest_return_curve(store: SnapshotStore, reference_index: int = 0) -> list[tuple[int, float, float, float]]:
    """Rows (m, t, distance to reference, running minimum) for m != reference."""
    if not (0 <= reference_index < len(store)):
        raise IndexError(f"reference index {reference_index} out of range for {len(store)} samples")
    rows: list[tuple[int, float, float, float]] = []
    running = math.inf
    for i, sample in enumerate(store.samples):
        if i == reference_index:
            continue
        d = store.distance(i, reference_index)
        running = min(running, d)
        rows.append((sample.m, sample.t, d, running))
    return rows
