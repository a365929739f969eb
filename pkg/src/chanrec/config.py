"""Run configuration: a strict JSON schema.

One structured text file drives every CLI command.  Parsing is
strict: unknown keys anywhere are errors, and every violation names
the offending field.  Reproducibility beats convenience.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .dynamics import SolverConfig
from .grid import ChannelGrid


class ConfigError(ValueError):
    """Schema violation; the message names the offending field."""


_PRESET_KEYS = {
    "shear": {"preset", "amplitude"},
    "eigenstate": {"preset", "amplitude", "perturb_rel", "perturb_seed", "perturb_max_mode"},
    "traveling_wave": {"preset", "amplitude", "c"},
    "random": {"preset", "amplitude", "seed", "max_mode"},
}

_VERIFY_CHECKS = ("lemma1", "tail_bound", "conservation")


def _require(block: dict, path: str, key: str) -> Any:
    if key not in block:
        raise ConfigError(f"{path}.{key}: required key is missing")
    return block[key]


def _reject_unknown(block: dict, path: str, allowed: set[str]) -> None:
    unknown = set(block) - allowed
    if unknown:
        raise ConfigError(f"{path}.{sorted(unknown)[0]}: unknown key")


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: must be a number, got {value!r}")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: must be an integer, got {value!r}")
    return value


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{path}: must be a boolean, got {value!r}")
    return value


def _parse_grid(block: Any) -> ChannelGrid:
    if not isinstance(block, dict):
        raise ConfigError("grid: must be an object")
    _reject_unknown(block, "grid", {"L_x", "a", "b", "N_x", "N_y"})
    L_x = _number(_require(block, "grid", "L_x"), "grid.L_x")
    a = _number(_require(block, "grid", "a"), "grid.a")
    b = _number(_require(block, "grid", "b"), "grid.b")
    N_x = _integer(_require(block, "grid", "N_x"), "grid.N_x")
    N_y = _integer(_require(block, "grid", "N_y"), "grid.N_y")
    if L_x <= 0:
        raise ConfigError("grid.L_x: must be positive")
    if b <= a:
        raise ConfigError("grid.b: must exceed grid.a")
    if N_x <= 0 or N_x % 2 != 0:
        raise ConfigError("grid.N_x: must be a positive even integer")
    if N_y < 3:
        raise ConfigError("grid.N_y: must be at least 3")
    return ChannelGrid(L_x=L_x, a=a, b=b, N_x=N_x, N_y=N_y)


def _parse_solver(block: Any) -> tuple[SolverConfig, list[float]]:
    if not isinstance(block, dict):
        raise ConfigError("solver: must be an object")
    allowed = {"t_end", "cfl", "fixed_dt", "dealias", "record_every", "snapshot_times"}
    _reject_unknown(block, "solver", allowed)
    t_end = _number(_require(block, "solver", "t_end"), "solver.t_end")
    if t_end < 0:
        raise ConfigError("solver.t_end: must be non-negative")
    if "cfl" in block and "fixed_dt" in block:
        raise ConfigError("solver.fixed_dt: give exactly one of cfl or fixed_dt")
    cfl = None
    fixed_dt = None
    if "fixed_dt" in block:
        fixed_dt = _number(block["fixed_dt"], "solver.fixed_dt")
        if fixed_dt <= 0:
            raise ConfigError("solver.fixed_dt: must be positive")
    else:
        cfl = _number(block.get("cfl", 0.4), "solver.cfl")
        if not (0.0 < cfl <= 1.0):
            raise ConfigError("solver.cfl: must lie in (0, 1]")
    dealias = _boolean(block.get("dealias", True), "solver.dealias")
    record_every = _integer(block.get("record_every", 1), "solver.record_every")
    if record_every < 1:
        raise ConfigError("solver.record_every: must be a positive integer")
    times = block.get("snapshot_times", [])
    if not isinstance(times, list):
        raise ConfigError("solver.snapshot_times: must be a list of times")
    snapshot_times = [_number(v, f"solver.snapshot_times[{i}]") for i, v in enumerate(times)]
    for i, ts in enumerate(snapshot_times):
        if ts < 0 or ts > t_end:
            raise ConfigError(f"solver.snapshot_times[{i}]: must lie within [0, t_end]")
    cfg = SolverConfig(t_end=t_end, cfl=cfl, fixed_dt=fixed_dt, dealias=dealias, record_every=record_every)
    return cfg, snapshot_times


def _parse_initial(block: Any) -> dict:
    if not isinstance(block, dict):
        raise ConfigError("initial: must be an object")
    preset = _require(block, "initial", "preset")
    if preset not in _PRESET_KEYS:
        raise ConfigError(f"initial.preset: unknown preset {preset!r}; choose from {sorted(_PRESET_KEYS)}")
    _reject_unknown(block, "initial", _PRESET_KEYS[preset])
    out: dict[str, Any] = {"preset": preset}
    out["amplitude"] = _number(block.get("amplitude", 1.0), "initial.amplitude")
    if preset == "traveling_wave":
        c = _number(_require(block, "initial", "c"), "initial.c")
        if c == 0:
            raise ConfigError("initial.c: must be non-zero")
        out["c"] = c
    if preset == "random":
        out["seed"] = _integer(_require(block, "initial", "seed"), "initial.seed")
        out["max_mode"] = _integer(block.get("max_mode", 4), "initial.max_mode")
        if out["max_mode"] < 1:
            raise ConfigError("initial.max_mode: must be at least 1")
    if preset == "eigenstate":
        out["perturb_rel"] = _number(block.get("perturb_rel", 0.0), "initial.perturb_rel")
        if out["perturb_rel"] < 0:
            raise ConfigError("initial.perturb_rel: must be non-negative")
        out["perturb_seed"] = _integer(block.get("perturb_seed", 0), "initial.perturb_seed")
        out["perturb_max_mode"] = _integer(block.get("perturb_max_mode", 4), "initial.perturb_max_mode")
    return out


@dataclass(frozen=True)
class RecurrenceSettings:
    T: float
    M: int
    delta: float | None
    delta_rel: float | None


def _parse_recurrence(block: Any) -> RecurrenceSettings:
    if not isinstance(block, dict):
        raise ConfigError("recurrence: must be an object")
    _reject_unknown(block, "recurrence", {"T", "M", "delta", "delta_rel"})
    T = _number(_require(block, "recurrence", "T"), "recurrence.T")
    if T <= 0:
        raise ConfigError("recurrence.T: must be positive")
    M = _integer(_require(block, "recurrence", "M"), "recurrence.M")
    if M < 1:
        raise ConfigError("recurrence.M: must be a positive integer")
    if ("delta" in block) == ("delta_rel" in block):
        raise ConfigError("recurrence.delta: give exactly one of delta or delta_rel")
    delta = delta_rel = None
    if "delta" in block:
        delta = _number(block["delta"], "recurrence.delta")
        if delta <= 0:
            raise ConfigError("recurrence.delta: must be positive")
    else:
        delta_rel = _number(block["delta_rel"], "recurrence.delta_rel")
        if delta_rel <= 0:
            raise ConfigError("recurrence.delta_rel: must be positive")
    return RecurrenceSettings(T=T, M=M, delta=delta, delta_rel=delta_rel)


@dataclass(frozen=True)
class VerifySettings:
    checks: tuple[str, ...]
    n_fields: int
    seed: int
    max_mode: int
    lemma1_tol: float
    tail_cutoffs: tuple[int, ...]
    conservation_max_mode: int
    conservation_amplitude: float
    t_end: float
    energy_drift_tol: float
    enstrophy_drift_tol: float


def _parse_verify(block: Any) -> VerifySettings:
    if not isinstance(block, dict):
        raise ConfigError("verify: must be an object")
    allowed = {
        "checks",
        "n_fields",
        "seed",
        "max_mode",
        "lemma1_tol",
        "tail_cutoffs",
        "conservation_max_mode",
        "conservation_amplitude",
        "t_end",
        "energy_drift_tol",
        "enstrophy_drift_tol",
    }
    _reject_unknown(block, "verify", allowed)
    checks = block.get("checks", list(_VERIFY_CHECKS))
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise ConfigError("verify.checks: must be a list of check names")
    for c in checks:
        if c not in _VERIFY_CHECKS:
            raise ConfigError(f"verify.checks: unknown check {c!r}; choose from {list(_VERIFY_CHECKS)}")
    n_fields = _integer(block.get("n_fields", 100), "verify.n_fields")
    if n_fields < 1:
        raise ConfigError("verify.n_fields: must be a positive integer")
    seed = _integer(block.get("seed", 2026), "verify.seed")
    max_mode = _integer(block.get("max_mode", 6), "verify.max_mode")
    lemma1_tol = _number(block.get("lemma1_tol", 0.02), "verify.lemma1_tol")
    cutoffs = block.get("tail_cutoffs", [1, 2, 4, 8, 16])
    if not isinstance(cutoffs, list):
        raise ConfigError("verify.tail_cutoffs: must be a list of integers")
    tail_cutoffs = tuple(_integer(v, f"verify.tail_cutoffs[{i}]") for i, v in enumerate(cutoffs))
    # conservation defaults calibrated at 64x65: dealiased run drifts well
    # under the tolerances, the --break-dealias fault clearly exceeds them
    conservation_max_mode = _integer(block.get("conservation_max_mode", 10), "verify.conservation_max_mode")
    conservation_amplitude = _number(block.get("conservation_amplitude", 0.5), "verify.conservation_amplitude")
    t_end = _number(block.get("t_end", 1.0), "verify.t_end")
    energy_drift_tol = _number(block.get("energy_drift_tol", 0.01), "verify.energy_drift_tol")
    enstrophy_drift_tol = _number(block.get("enstrophy_drift_tol", 5e-3), "verify.enstrophy_drift_tol")
    return VerifySettings(
        checks=tuple(checks),
        n_fields=n_fields,
        seed=seed,
        max_mode=max_mode,
        lemma1_tol=lemma1_tol,
        tail_cutoffs=tail_cutoffs,
        conservation_max_mode=conservation_max_mode,
        conservation_amplitude=conservation_amplitude,
        t_end=t_end,
        energy_drift_tol=energy_drift_tol,
        enstrophy_drift_tol=enstrophy_drift_tol,
    )


@dataclass(frozen=True)
class RunConfig:
    grid: ChannelGrid
    solver: SolverConfig
    snapshot_times: tuple[float, ...]
    initial: dict
    recurrence: RecurrenceSettings | None
    verify: VerifySettings
    output_dir: str


def parse_config(data: Any) -> RunConfig:
    """Validate a decoded JSON document against the full schema."""
    if not isinstance(data, dict):
        raise ConfigError("top level: must be an object")
    allowed = {"grid", "solver", "initial", "recurrence", "verify", "output_dir"}
    _reject_unknown(data, "top level", allowed)
    grid = _parse_grid(_require(data, "top level", "grid"))
    solver, snapshot_times = _parse_solver(_require(data, "top level", "solver"))
    initial = _parse_initial(_require(data, "top level", "initial"))
    recurrence = _parse_recurrence(data["recurrence"]) if "recurrence" in data else None
    verify = _parse_verify(data.get("verify", {}))
    output_dir = data.get("output_dir", "out")
    if not isinstance(output_dir, str):
        raise ConfigError("output_dir: must be a string")
    return RunConfig(
        grid=grid,
        solver=solver,
        snapshot_times=tuple(snapshot_times),
        initial=initial,
        recurrence=recurrence,
        verify=verify,
        output_dir=output_dir,
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return parse_config(data)
