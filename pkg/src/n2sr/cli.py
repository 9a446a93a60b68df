"""`sr` command-line interface.

Subcommands: seed-phase, regimes, pressure-scan, fit, validate. Exit codes:
0 success, 1 usage or configuration error, 2 numerical failure,
3 validation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import config as cfgmod
from .bloch import bloch_angle, integrate_bloch_rwa
from .config import ConfigError, RunConfig, load_config, resolved_items
from .constants import per_m3_to_per_cm3, s_to_ps
from .errors import NumericalError
from .pressure import (
    REFERENCE_DENSITY_SLOPE_PER_CM3_MBAR,
    medium_at_pressure,
    pressure_scan,
    write_scan_csv,
)
from .profiles import fit_sech2, read_trace_csv, summarize_by_pressure, write_summary_csv
from .superradiance import solve_after_seed, write_profile_csv
from .validation import run_validation_checks

DEFAULT_PRESSURES = "6,7,8,10,12,14,16,18,20"


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code-1 path."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", metavar="FILE", default=None, help="INI-style config file")
        p.add_argument(
            "--set", metavar="KEY=VALUE", action="append", default=[],
            dest="overrides", help="override a config key (repeatable)",
        )
        p.add_argument("--out", metavar="DIR", default=None, help="output directory")

    add_common(sub.add_parser("seed-phase", help="integrate the seed-stage Bloch dynamics"))
    add_common(sub.add_parser("regimes", help="emit the four burst regimes as CSV panels"))

    scan = sub.add_parser("pressure-scan", help="predict burst observables across pressures")
    add_common(scan)
    scan.add_argument(
        "--pressures", default=DEFAULT_PRESSURES,
        help=f"comma-separated pressures in mbar (default {DEFAULT_PRESSURES})",
    )

    fit = sub.add_parser("fit", help="fit sech^2 profiles to measured traces")
    add_common(fit)
    fit.add_argument("traces", nargs="+", metavar="TRACE_CSV")

    val = sub.add_parser("validate", help="run the physics invariant checks")
    add_common(val)
    val.add_argument(
        "--corrupt", default=None, metavar="CONSTANT",
        help="test hook: perturb a physical constant so the checks must fail",
    )
    return parser


def _write_manifest(outdir: Path, cfg: RunConfig, command: str, argv: Sequence[str]) -> None:
    with (outdir / "run-manifest.txt").open("w") as fh:
        fh.write("[invocation]\n")
        fh.write(f"command = {command}\n")
        fh.write(f"argv = {' '.join(argv)}\n")
        fh.write("\n[config]\n")
        for key, value in resolved_items(cfg):
            fh.write(f"{key} = {value}\n")


def cmd_seed_phase(cfg: RunConfig, outdir: Path) -> int:
    seed = cfgmod.seed_pulse(cfg)
    medium = cfgmod.medium_template(cfg)
    dt = cfgmod.dt_seconds(cfg)
    traj = integrate_bloch_rwa(seed, medium, t_end=seed.tau_r, dt=dt)
    traj.write_csv(outdir / "bloch_trajectory.csv")

    final = traj.final_state
    theta = float(traj.theta[-1])
    theta_quad = bloch_angle(seed, medium, seed.tau_r, dt=dt)
    defect = abs(final.v**2 + final.w**2 - medium.w0**2)
    lines = [
        f"theta_tau_r_rad = {theta!r}",
        f"theta_tau_r_over_pi = {theta / math.pi!r}",
        f"theta_quadrature_rad = {theta_quad!r}",
        f"u_tau_r = {final.u!r}",
        f"v_tau_r = {final.v!r}",
        f"w_tau_r = {final.w!r}",
        f"conservation_defect = {defect!r}",
    ]
    (outdir / "seed_summary.txt").write_text("[seed-phase]\n" + "\n".join(lines) + "\n")
    print(f"seed stage: theta(tau_r) = {theta:.6f} rad = {theta / math.pi:.5f} pi")
    print(f"Bloch vector at tau_r: v = {final.v:.6e}, w = {final.w:.6e}")
    return 0


def cmd_regimes(cfg: RunConfig, outdir: Path) -> int:
    seed = cfgmod.seed_pulse(cfg)
    cal = cfgmod.calibration(cfg)
    medium = medium_at_pressure(cal, cfgmod.medium_template(cfg), cal.anchor_p)
    theta_weak = bloch_angle(seed, medium, seed.tau_r, dt=cfgmod.dt_seconds(cfg))
    if not 0.0 < theta_weak < 0.5 * math.pi:
        raise ConfigError(
            f"the configured seed tips the Bloch vector to {theta_weak:.4f} rad; "
            "the weak-seed panels need theta_r in (0, pi/2)"
        )
    theta_strong = cfg.theta_strong_over_pi * math.pi

    solutions = [
        solve_after_seed(medium, theta_weak, seed.tau_r),
        solve_after_seed(medium, theta_strong, seed.tau_r),
        solve_after_seed(dataclasses.replace(medium, w0=-medium.w0), theta_weak, seed.tau_r),
        solve_after_seed(dataclasses.replace(medium, w0=-medium.w0), theta_strong, seed.tau_r),
    ]

    # Shared dimensionless grid (t - tau_r)/tau_W, with each burst's exact
    # peak offset spliced in so delayed peaks hit P/P0 = 1 on a sample.
    span = cfg.regime_span_tau_w
    grid = np.linspace(0.0, span, cfg.regime_points)
    peaks = [
        (sol.tau_D - sol.tau_r) / sol.tau_W
        for sol in solutions
        if 0.0 < (sol.tau_D - sol.tau_r) / sol.tau_W < span
    ]
    grid = np.unique(np.concatenate([grid, np.asarray(peaks)]))

    for idx, sol in enumerate(solutions, start=1):
        t = seed.tau_r + grid * sol.tau_W
        theta = sol.bloch_angle(t)
        w = sol.population_difference(t)
        x = (t - sol.tau_D) / sol.tau_W
        p_norm = 1.0 / np.cosh(x) ** 2
        with (outdir / f"regime{idx}.csv").open("w") as fh:
            fh.write("t_ps,t_rel_tau_W,theta_rad,w,P_over_P0\n")
            for j in range(len(t)):
                fh.write(
                    f"{s_to_ps(float(t[j]))!r},{float(grid[j])!r},{float(theta[j])!r},"
                    f"{float(w[j])!r},{float(p_norm[j])!r}\n"
                )
        print(
            f"regime {idx} ({sol.regime.name.lower().replace('_', ' ')}): "
            f"tau_D - tau_r = {(sol.tau_D - sol.tau_r) / sol.tau_W:+.3f} tau_W"
        )

    write_profile_csv(
        outdir / "profile.csv",
        solutions[0],
        solutions[0].time_grid(cfg.window_tau_w, cfg.profile_points),
    )
    return 0


def _parse_pressures(raw: str) -> list[float]:
    try:
        pressures = [float(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse pressure list '{raw}'") from None
    if not pressures:
        raise ConfigError("the pressure list is empty")
    return pressures


def cmd_pressure_scan(cfg: RunConfig, pressures: list[float], outdir: Path) -> int:
    cal = cfgmod.calibration(cfg)
    rows = pressure_scan(
        cal,
        cfgmod.seed_pulse(cfg),
        cfgmod.medium_template(cfg),
        pressures,
        dephasing=cfgmod.dephasing_parameters(cfg),
        radius=cfgmod.radius_m(cfg),
        validity_threshold=cfg.validity_threshold,
        dt=cfgmod.dt_seconds(cfg),
    )
    write_scan_csv(outdir / "pressure_scan.csv", rows)
    print(
        f"density slope k = {per_m3_to_per_cm3(cal.k):.4e} cm^-3/mbar from the anchor "
        f"({cal.anchor_p} mbar, {s_to_ps(cal.anchor_tau_w):.4f} ps); "
        f"published reference slope {REFERENCE_DENSITY_SLOPE_PER_CM3_MBAR:.4e} cm^-3/mbar"
    )
    for r in rows:
        flag = "" if r.valid else "  [dephasing margin below threshold]"
        print(
            f"p = {r.p_mbar:5.1f} mbar: tau_W = {s_to_ps(r.tau_W):6.3f} ps, "
            f"tau_D = {s_to_ps(r.tau_D):6.3f} ps, margin = {r.validity_margin:7.1f}{flag}"
        )
    return 0


def cmd_fit(cfg: RunConfig, trace_files: list[str], outdir: Path) -> int:
    traces = [read_trace_csv(p) for p in trace_files]
    fits = [fit_sech2(t, tol=cfg.fit_tol, max_iter=cfg.fit_max_iter) for t in traces]

    with (outdir / "fits.csv").open("w") as fh:
        fh.write("file,pressure_mbar,amplitude_arb,tau_D_ps,tau_W_ps,rms_residual_arb,converged\n")
        for path, trace, fit in zip(trace_files, traces, fits):
            p = "" if trace.pressure is None else repr(trace.pressure)
            fh.write(
                f"{Path(path).name},{p},{fit.amplitude!r},{s_to_ps(fit.tau_D)!r},"
                f"{s_to_ps(fit.tau_W)!r},{fit.rms_residual!r},{fit.converged}\n"
            )
            status = "converged" if fit.converged else "NOT converged"
            print(
                f"{Path(path).name}: tau_D = {s_to_ps(fit.tau_D):.3f} ps, "
                f"tau_W = {s_to_ps(fit.tau_W):.3f} ps ({status})"
            )

    with_pressure = [t for t in traces if t.pressure is not None]
    for trace in traces:
        if trace.pressure is None:
            print(
                f"warning: trace '{trace.label}' has no pressure_mbar metadata; "
                "excluded from the pressure summary",
                file=sys.stderr,
            )
    if with_pressure:
        write_summary_csv(outdir / "pulse_summary.csv", summarize_by_pressure(with_pressure))
    return 0


def cmd_validate(cfg: RunConfig, corrupt: Optional[str], outdir: Path) -> int:
    try:
        results = run_validation_checks(cfg, corrupt)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results
    ]
    report = "\n".join(lines) + "\n"
    (outdir / "validate_report.txt").write_text(report)
    print(report, end="")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return 3
    print(f"all {len(results)} checks passed")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config, args.overrides)
        outdir = Path(args.out) if args.out is not None else Path(cfg.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        _write_manifest(outdir, cfg, args.command, argv)
        if args.command == "seed-phase":
            return cmd_seed_phase(cfg, outdir)
        if args.command == "regimes":
            return cmd_regimes(cfg, outdir)
        if args.command == "pressure-scan":
            return cmd_pressure_scan(cfg, _parse_pressures(args.pressures), outdir)
        if args.command == "fit":
            return cmd_fit(cfg, args.traces, outdir)
        return cmd_validate(cfg, args.corrupt, outdir)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
