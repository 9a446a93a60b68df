"""Invariant checks behind the `sr validate` command.

Each check recomputes a physical identity two independent ways and compares
at a stated tolerance. A deliberately corrupted constant (the `corrupt`
hook) must make the constants check fail; nothing else consults it.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple, Optional

import numpy as np

from . import config as cfgmod
from .bloch import analytic_seed_solution, bloch_angle, integrate_bloch_rwa
from .constants import CONSTANTS, mw_per_cm2_to_w_per_m2, s_to_ps
from .pressure import (
    dephasing_time,
    medium_at_pressure,
    pressure_scan,
    superradiance_valid,
)
from .profiles import SECH2_FWHM_EXACT, TemporalTrace, extract_fwhm
from .superradiance import (
    characteristic_duration,
    emitted_intensity,
    emitted_power_density,
    energy_density,
    integrate_pendulum,
    solve_after_seed,
)
from .system import intensity_from_peak_field, peak_field_from_intensity

DEFAULT_SCAN_PRESSURES = (6.0, 7.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0)

_CORRUPTIBLE = ("hbar", "c", "eps0", "mu0", "kB")

# CODATA 2018 values, restated here independently of the constants module so
# a corrupted working copy cannot hide behind its own reference.
_CODATA_2018 = {
    "hbar": 1.054571817e-34,
    "c": 2.99792458e8,
    "eps0": 8.8541878128e-12,
    "mu0": 1.25663706212e-6,
    "kB": 1.380649e-23,
}


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _check_constants_product(corrupt: Optional[str]) -> CheckResult:
    factors = {name: 1.0 for name in _CORRUPTIBLE}
    if corrupt is not None:
        factors[corrupt] = 1.0 + 1e-6
    working = {name: getattr(CONSTANTS, name) * factors[name] for name in _CORRUPTIBLE}
    product = working["mu0"] * working["eps0"] * working["c"] ** 2
    defect = abs(product - 1.0)
    drift = max(
        abs(working[name] / reference - 1.0) for name, reference in _CODATA_2018.items()
    )
    passed = defect <= 1e-9 and drift <= 1e-9
    return CheckResult(
        "constants-product",
        passed,
        f"|mu0 eps0 c^2 - 1| = {defect:.3e}, max drift from reference table = {drift:.3e}",
    )


def _check_seed_roundtrip(cfg) -> CheckResult:
    intensity = mw_per_cm2_to_w_per_m2(cfg.seed_intensity_mw_cm2 or 10.0)
    back = intensity_from_peak_field(peak_field_from_intensity(intensity))
    rel = abs(back - intensity) / intensity
    return CheckResult("seed-field-roundtrip", rel <= 1e-12, f"relative defect {rel:.3e}")


def _check_bloch(cfg) -> tuple[CheckResult, CheckResult]:
    seed = cfgmod.seed_pulse(cfg)
    medium = cfgmod.medium_template(cfg)
    traj = integrate_bloch_rwa(seed, medium, t_end=seed.tau_r, dt=cfgmod.dt_seconds(cfg))

    defect = np.max(np.abs(traj.v**2 + traj.w**2 - medium.w0**2))
    u_max = np.max(np.abs(traj.u))
    conservation = CheckResult(
        "bloch-conservation",
        defect <= 1e-9 and u_max <= 1e-12,
        f"max |v^2+w^2-w0^2| = {defect:.3e}, max |u| = {u_max:.3e}",
    )

    worst = 0.0
    for idx in np.linspace(1, len(traj) - 1, 9).astype(int):
        t = float(traj.t[idx])
        ref = analytic_seed_solution(seed, medium, t, dt=cfgmod.dt_seconds(cfg))
        worst = max(worst, abs(traj.v[idx] - ref.v), abs(traj.w[idx] - ref.w))
    closed_form = CheckResult(
        "bloch-closed-form", worst <= 1e-8, f"max |rk - closed form| = {worst:.3e}"
    )
    return conservation, closed_form


def _check_pendulum(cfg) -> CheckResult:
    seed = cfgmod.seed_pulse(cfg)
    cal = cfgmod.calibration(cfg)
    medium = medium_at_pressure(cal, cfgmod.medium_template(cfg), cal.anchor_p)
    theta_weak = bloch_angle(seed, medium, seed.tau_r, dt=cfgmod.dt_seconds(cfg))
    worst = 0.0
    cases = [
        (medium, theta_weak),
        (medium, 0.3 * math.pi),
        (medium, cfg.theta_strong_over_pi * math.pi),
        (dataclasses.replace(medium, w0=-medium.w0), cfg.theta_strong_over_pi * math.pi),
    ]
    for m, theta_r in cases:
        sol = solve_after_seed(m, theta_r, seed.tau_r)
        dt = cfg.pendulum_dt_over_tau_w * sol.tau_W
        t, theta = integrate_pendulum(theta_r, seed.tau_r, m, seed.tau_r + 10.0 * sol.tau_W, dt)
        worst = max(worst, float(np.max(np.abs(theta - sol.bloch_angle(t)))))
    return CheckResult("pendulum-closed-form", worst <= 1e-7, f"max |ode - closed form| = {worst:.3e} rad")


def _reference_solution(cfg):
    seed = cfgmod.seed_pulse(cfg)
    cal = cfgmod.calibration(cfg)
    medium = medium_at_pressure(cal, cfgmod.medium_template(cfg), cal.anchor_p)
    theta_r = bloch_angle(seed, medium, seed.tau_r, dt=cfgmod.dt_seconds(cfg))
    return solve_after_seed(medium, theta_r, seed.tau_r)


def _check_intensity_identity(cfg) -> CheckResult:
    sol = _reference_solution(cfg)
    t = sol.time_grid(window_tau_w=5.0, n=501)
    exact = np.all(emitted_intensity(t, sol) == emitted_power_density(t, sol) * sol.medium.L)
    return CheckResult("intensity-power-identity", bool(exact), "I_s == P_s * L on every sample")


def _check_energy_bookkeeping(cfg) -> CheckResult:
    sol = _reference_solution(cfg)
    n = 20000
    t = sol.time_grid(window_tau_w=20.0, n=n + 1)
    p = emitted_power_density(t, sol)
    h = float(t[1] - t[0])
    integral = (h / 3.0) * (p[0] + p[-1] + 4.0 * p[1:-1:2].sum() + 2.0 * p[2:-1:2].sum())
    released = float(energy_density(t[0], sol) - energy_density(t[-1], sol))
    rel_int = abs(integral - released) / abs(released)

    probes = sol.tau_D + np.linspace(-3.0, 3.0, 20) * sol.tau_W
    fd_h = 1e-4 * sol.tau_W
    dEdt = (energy_density(probes + 0.5 * fd_h, sol) - energy_density(probes - 0.5 * fd_h, sol)) / fd_h
    rel_fd = float(np.max(np.abs(-dEdt - emitted_power_density(probes, sol)) / emitted_power_density(probes, sol)))
    ok = rel_int <= 1e-6 and rel_fd <= 1e-6
    return CheckResult(
        "energy-bookkeeping", ok,
        f"integral vs released {rel_int:.3e}, -dE/dt vs P_s {rel_fd:.3e}",
    )


def _check_width_rule(cfg) -> CheckResult:
    sol = _reference_solution(cfg)
    t = sol.time_grid(window_tau_w=5.0, n=2001)  # spacing tau_W / 200
    trace = TemporalTrace(t=t, intensity=np.asarray(emitted_intensity(t, sol)))
    ratio = extract_fwhm(trace) / sol.tau_W
    rel = abs(ratio - SECH2_FWHM_EXACT) / SECH2_FWHM_EXACT
    return CheckResult("sech2-width-rule", rel <= 1e-3, f"FWHM/tau_W = {ratio:.6f}")


def _check_calibration_roundtrip(cfg) -> CheckResult:
    cal = cfgmod.calibration(cfg)
    medium = medium_at_pressure(cal, cfgmod.medium_template(cfg), cal.anchor_p)
    rel = abs(characteristic_duration(medium) - cal.anchor_tau_w) / cal.anchor_tau_w
    return CheckResult("calibration-roundtrip", rel <= 1e-10, f"relative defect {rel:.3e}")


def _check_scan_scaling(cfg) -> CheckResult:
    cal = cfgmod.calibration(cfg)
    rows = pressure_scan(
        cal,
        cfgmod.seed_pulse(cfg),
        cfgmod.medium_template(cfg),
        DEFAULT_SCAN_PRESSURES,
        dephasing=cfgmod.dephasing_parameters(cfg),
        radius=cfgmod.radius_m(cfg),
        validity_threshold=cfg.validity_threshold,
        dt=cfgmod.dt_seconds(cfg),
    )
    p_max = rows[-1].p_mbar
    worst = 0.0
    for r in rows:
        x = (r.p_mbar - cal.p0) / (p_max - cal.p0)
        worst = max(worst, abs(r.I_peak_norm - x**2), abs(r.E_total_norm - x))
    tau_w = [r.tau_W for r in rows]
    tau_d = [r.tau_D for r in rows]
    monotone = all(a > b for a, b in zip(tau_w, tau_w[1:])) and all(
        a > b for a, b in zip(tau_d, tau_d[1:])
    )
    ok = worst <= 1e-12 and monotone
    return CheckResult(
        "scan-scaling", ok,
        f"normalized-shape defect {worst:.3e}, widths/delays monotone: {monotone}",
    )


def _check_dephasing(cfg) -> CheckResult:
    params = cfgmod.dephasing_parameters(cfg)
    tau_2 = dephasing_time(20.0, params)
    expected = 207e-12
    in_band = abs(tau_2 - expected) <= 0.1 * expected
    covers = 0.9 * tau_2 <= 200e-12 <= 1.1 * tau_2

    sol = _reference_solution(cfg)
    cal = cfgmod.calibration(cfg)
    check = superradiance_valid(
        dephasing_time(cal.anchor_p, params), sol.tau_W, sol.tau_D, threshold=cfg.validity_threshold
    )
    ok = in_band and covers and check.valid
    return CheckResult(
        "dephasing-window", ok,
        f"tau_2(20 mbar) = {s_to_ps(tau_2):.1f} ps, anchor margin = {check.margin:.1f}",
    )


def run_validation_checks(cfg, corrupt: Optional[str] = None) -> list[CheckResult]:
    if corrupt is not None and corrupt not in _CORRUPTIBLE:
        raise ValueError(f"corruptible constants are {', '.join(_CORRUPTIBLE)}")
    conservation, closed_form = _check_bloch(cfg)
    return [
        _check_constants_product(corrupt),
        _check_seed_roundtrip(cfg),
        conservation,
        closed_form,
        _check_pendulum(cfg),
        _check_intensity_identity(cfg),
        _check_energy_bookkeeping(cfg),
        _check_width_rule(cfg),
        _check_calibration_roundtrip(cfg),
        _check_scan_scaling(cfg),
        _check_dephasing(cfg),
    ]
