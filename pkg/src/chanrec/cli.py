"""Command-line interface: simulate / recurrence / verify / annulus.

Exit codes are frozen: 0 success, 1 configuration error (no outputs),
2 numerical abort (partial outputs retained), 3 failed verification
check.  Identical config and seed reproduce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import presets
from .annulus import AnnulusSpec, annulus_report
from .config import ConfigError, RunConfig, _parse_initial, load_config, parse_config
from .diagnostics import (
    CSV_COLUMNS,
    DiagnosticsRecord,
    conservation_report,
    lemma1_check,
    tail_bound_check,
)
from .dynamics import EulerSolver, SolverBlowupError
from .operators import l2_norm
from .recurrence import (
    RecurrenceConfig,
    audit_cover,
    build_cover,
    closest_return_curve,
    detect_returns,
    pigeonhole_bound,
    sample_trajectory,
)
from .snapshot_io import write_snapshot

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_CHECK = 3

_DEFAULT_VERIFY_DOC = {
    "grid": {"L_x": 6.283185307179586, "a": 0.0, "b": 3.141592653589793, "N_x": 64, "N_y": 65},
    "solver": {"t_end": 0.0},
    "initial": {"preset": "random", "seed": 2026, "max_mode": 6},
}


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    from dataclasses import replace

    from .config import _PRESET_KEYS

    out = cfg
    if getattr(args, "out", None):
        out = replace(out, output_dir=args.out)
    if getattr(args, "preset", None):
        allowed = _PRESET_KEYS.get(args.preset, set())
        merged = {k: v for k, v in out.initial.items() if k in allowed and k != "preset"}
        merged["preset"] = args.preset
        if args.preset == "random" and "seed" not in merged:
            if getattr(args, "seed", None) is None:
                raise ConfigError("initial.seed: required for preset 'random' (give --seed or set it in the config)")
            merged["seed"] = args.seed
        out = replace(out, initial=_parse_initial(merged))
    if getattr(args, "seed", None) is not None:
        initial = dict(out.initial)
        if initial["preset"] == "random":
            initial["seed"] = args.seed
        elif initial["preset"] == "eigenstate":
            initial["perturb_seed"] = args.seed
        out = replace(out, initial=initial, verify=replace(out.verify, seed=args.seed))
    return out


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_simulate(cfg: RunConfig) -> int:
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    state0 = presets.initial_state(cfg.grid, cfg.initial)
    solver = EulerSolver(cfg.grid, cfg.solver)
    csv_path = outdir / "diagnostics.csv"
    code = EXIT_OK
    with open(csv_path, "w") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")

        def diag_sink(rec: DiagnosticsRecord) -> None:
            fh.write(rec.csv_row() + "\n")

        def snap_sink(index: int, state, vel) -> None:
            write_snapshot(outdir / f"snapshot_{index:04d}.chrc", vel, state.t)

        try:
            solver.run(
                state0,
                diagnostics_sink=diag_sink,
                snapshot_times=cfg.snapshot_times,
                snapshot_sink=snap_sink if cfg.snapshot_times else None,
            )
        except SolverBlowupError as exc:
            print(f"numerical abort: {exc}", file=sys.stderr)
            code = EXIT_NUMERIC
    print(f"wrote {csv_path}")
    return code


def cmd_recurrence(cfg: RunConfig) -> int:
    if cfg.recurrence is None:
        raise ConfigError("recurrence: block is required for the recurrence command")
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    state0 = presets.initial_state(cfg.grid, cfg.initial)

    from .dynamics import velocity_from_vorticity

    v0_norm = l2_norm(velocity_from_vorticity(state0.omega))
    settings = cfg.recurrence
    delta = settings.delta if settings.delta is not None else settings.delta_rel * v0_norm
    if delta <= 0:
        raise ConfigError("recurrence.delta: resolved ball radius must be positive (zero initial field?)")
    rconfig = RecurrenceConfig(T=settings.T, M=settings.M, delta=delta)

    store = sample_trajectory(state0, rconfig, cfg.solver)
    net = build_cover(store, delta)
    audit = audit_cover(store, net)
    returns = detect_returns(net, k=2) if any(len(b.visits) >= 2 for b in net.balls) else []
    bound = pigeonhole_bound(len(store), net.n_centers)

    payload = {
        "delta": delta,
        "n_samples": len(store),
        "n_centers": net.n_centers,
        "centers": [{"center_index": b.center_index, "visits": list(b.visits)} for b in net.balls],
        "returns": [{"center_index": b.center_index, "visits": list(b.visits)} for b in returns],
        "max_visits": net.max_visits(),
        "pigeonhole_bound": bound,
        "pigeonhole_holds": net.max_visits() >= bound,
        "audit": audit,
        "error": store.error,
    }
    _write_json(outdir / "cover.json", payload)

    rows = closest_return_curve(store, reference_index=0)
    with open(outdir / "closest_return.csv", "w") as fh:
        fh.write("m,t,distance,running_min\n")
        for m, t, d, running in rows:
            fh.write(f"{m},{t!r},{d!r},{running!r}\n")

    print(f"cover: {net.n_centers} centers over {len(store)} samples, max_visits={net.max_visits()} >= {bound}")
    if store.error:
        print(f"numerical abort: {store.error}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_verify(cfg: RunConfig, break_dealias: bool = False) -> int:
    settings = cfg.verify
    if not settings.checks:
        print("no checks requested", file=sys.stderr)
        return EXIT_CONFIG
    grid = cfg.grid
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    results = []

    fields = [
        presets.random_series(grid.L_x, grid.a, grid.b, seed=settings.seed + i, max_mode=settings.max_mode)
        for i in range(settings.n_fields)
    ]

    for check in settings.checks:
        if check == "lemma1":
            worst = 0.0
            for series in fields:
                worst = max(worst, lemma1_check(series.velocity(grid), omega=series.vorticity(grid)))
            passed = worst <= settings.lemma1_tol
            results.append(
                {"name": "lemma1", "passed": passed, "details": {"max_residual": worst, "tolerance": settings.lemma1_tol}}
            )
        elif check == "tail_bound":
            cutoffs = [N for N in settings.tail_cutoffs if N < grid.N_x // 2]
            failures = 0
            for series in fields:
                vel = series.velocity(grid)
                for N in cutoffs:
                    _, _, holds = tail_bound_check(vel, N)
                    failures += 0 if holds else 1
            results.append(
                {
                    "name": "tail_bound",
                    "passed": failures == 0,
                    "details": {"failures": failures, "cutoffs": cutoffs, "n_fields": settings.n_fields},
                }
            )
        elif check == "conservation":
            from dataclasses import replace

            solver_cfg = replace(cfg.solver, t_end=settings.t_end, dealias=not break_dealias)
            solver = EulerSolver(grid, solver_cfg)
            records: list[DiagnosticsRecord] = []
            state0 = presets.initial_state(
                grid,
                {
                    "preset": "random",
                    "seed": settings.seed,
                    "max_mode": settings.conservation_max_mode,
                    "amplitude": settings.conservation_amplitude,
                },
            )
            aborted = None
            try:
                solver.run(state0, diagnostics_sink=records.append)
            except SolverBlowupError as exc:
                aborted = str(exc)
            summary = conservation_report(records)
            passed = (
                aborted is None
                and summary.max_E_drift <= settings.energy_drift_tol
                and summary.max_G_drift <= settings.enstrophy_drift_tol
            )
            results.append(
                {
                    "name": "conservation",
                    "passed": passed,
                    "details": {
                        "max_E_drift": summary.max_E_drift,
                        "max_G_drift": summary.max_G_drift,
                        "energy_drift_tol": settings.energy_drift_tol,
                        "enstrophy_drift_tol": settings.enstrophy_drift_tol,
                        "dealias": not break_dealias,
                        "aborted": aborted,
                    },
                }
            )

    all_passed = all(r["passed"] for r in results)
    _write_json(outdir / "verify.json", {"checks": results, "passed": all_passed})
    for r in results:
        print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['details']}")
    if not all_passed:
        failed = next(r["name"] for r in results if not r["passed"])
        print(f"check failed: {failed}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_annulus(r1: float, r2: float, n_r: int, n_theta: int) -> int:
    report = annulus_report(AnnulusSpec(R1=r1, R2=r2, N_r=n_r, N_theta=n_theta))
    header = f"{'R1':>8} {'R2':>8} {'enstrophy':>14} {'h1_seminorm_sq':>16} {'analytic':>14} {'rel_error':>12}"
    row = (
        f"{report['R1']:>8.4g} {report['R2']:>8.4g} {report['enstrophy']:>14.6e} "
        f"{report['h1_seminorm_sq']:>16.10f} {report['h1_closed_form']:>14.10f} "
        f"{report['h1_relative_error']:>12.3e}"
    )
    print(header)
    print(row)
    print(f"max |vorticity| on nodes: {report['max_abs_vorticity']:.3e}")
    print(f"steadiness residual (curl of acceleration): {report['steadiness_residual']:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chanrec", description="2D inviscid channel flow toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, config_required: bool = True) -> None:
        p.add_argument("--config", required=config_required, help="path to the JSON run configuration")
        p.add_argument("--out", help="output directory (overrides config output_dir)")
        p.add_argument("--seed", type=int, help="seed override for seeded presets")
        p.add_argument("--preset", help="initial-condition preset override")

    common(sub.add_parser("simulate", help="advance the flow, writing diagnostics CSV and optional snapshots"))
    common(sub.add_parser("recurrence", help="sample the orbit, build the ball cover, report returns"))
    verify_p = sub.add_parser("verify", help="run the identity/conservation check battery")
    common(verify_p, config_required=False)
    verify_p.add_argument("--break-dealias", action="store_true", help="fault injection: disable dealiasing in the conservation check")

    ann = sub.add_parser("annulus", help="print the annulus contrast table")
    ann.add_argument("--r1", type=float, default=1.0)
    ann.add_argument("--r2", type=float, default=2.0)
    ann.add_argument("--n-r", type=int, default=2048)
    ann.add_argument("--n-theta", type=int, default=256)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "annulus":
            return cmd_annulus(args.r1, args.r2, args.n_r, args.n_theta)
        if args.config is not None:
            cfg = load_config(args.config)
        elif args.command == "verify":
            cfg = parse_config(json.loads(json.dumps(_DEFAULT_VERIFY_DOC)))
        else:
            raise ConfigError("--config is required")
        cfg = _apply_overrides(cfg, args)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "recurrence":
            return cmd_recurrence(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, break_dealias=args.break_dealias)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
