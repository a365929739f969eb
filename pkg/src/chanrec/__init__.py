"""2D inviscid channel flow: spectral solver, conservation diagnostics,
annulus contrast, and recurrence detection over sampled orbits."""

from .annulus import AnnulusSpec, annulus_report, pr_field, pr_h1_closed_form, pr_h1_seminorm_sq
from .diagnostics import (
    ConservationSummary,
    DiagnosticsRecord,
    conservation_report,
    eddy_turnover_time,
    enstrophy,
    enstrophy_from_omega,
    h1_seminorm_sq,
    kinetic_energy,
    lemma1_check,
    tail_bound_check,
)
from .dynamics import (
    CFLViolationError,
    EulerSolver,
    SolverBlowupError,
    SolverConfig,
    State,
    galilean_reduce,
    velocity_from_vorticity,
    vorticity_of,
)
from .fields import ScalarField, SpectralField, VectorField, field_from_function
from .grid import ChannelGrid, GridMismatchError, ensure_same_grid
from .operators import ddy, integrate, l2_inner, l2_norm, mean_value, poisson_solve, scalar_l2_norm
from .presets import TrigStreamFunction, eigenstate_series, initial_state, random_series, shear_series
from .recurrence import (
    CoverBall,
    CoverNet,
    RecurrenceConfig,
    SnapshotStore,
    audit_cover,
    build_cover,
    closest_return_curve,
    detect_returns,
    pigeonhole_bound,
    sample_trajectory,
)
from .snapshot_io import (
    SnapshotFormatError,
    SnapshotMagicError,
    SnapshotTruncatedError,
    SnapshotVersionError,
    read_snapshot,
    write_snapshot,
)
from .spectral import ddx, spectral_l2_norm_sq, tail_above, to_physical, to_spectral, truncate_above

__version__ = "0.1.0"
