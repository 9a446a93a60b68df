"""Pressure scaling of the burst: density calibration, scan predictions,
collisional dephasing, and the validity margin of the coherent treatment.

The emitter density is taken linear in gas pressure above a threshold,
N = k (p - p0). Rather than trusting any published slope, k is calibrated
from a single anchor measurement (p_anchor, tau_W_anchor) by inverting the
characteristic-duration formula. An independently published slope for the
same transition is kept only for comparison; this module asserts neither
value as ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

from .bloch import bloch_angle
from .constants import (
    CONSTANTS,
    mbar_to_pascal,
    per_m3_to_per_cm3,
    pressure_to_number_density,
    s_to_ps,
    w_per_m2_to_w_per_cm2,
)
from .superradiance import characteristic_duration, peak_intensity, time_delay
from .system import SeedPulse, TwoLevelMedium

__all__ = [
    "BelowThresholdError",
    "DensityCalibration",
    "DephasingParameters",
    "ScanRow",
    "ValidityCheck",
    "REFERENCE_DENSITY_SLOPE_PER_CM3_MBAR",
    "calibrate_density_scale",
    "density_from_pressure",
    "medium_at_pressure",
    "total_emitted_energy",
    "emitted_energy_integral",
    "dephasing_time",
    "superradiance_valid",
    "pressure_scan",
    "write_scan_csv",
]

# Published linear-density slope for this transition (cm^-3 per mbar), kept
# for side-by-side comparison with the anchor-calibrated value.
REFERENCE_DENSITY_SLOPE_PER_CM3_MBAR = 0.228e16


class BelowThresholdError(ValueError):
    """Requested pressure is below the superradiance threshold p0."""


@dataclass(frozen=True)
class DensityCalibration:
    """Linear emitter-density model N = k (p - p0), anchored to one measurement."""

    k: float             # density per pressure, m^-3 / mbar
    p0: float            # threshold pressure, mbar
    anchor_p: float      # anchor pressure, mbar
    anchor_tau_w: float  # measured burst width parameter at the anchor, s

    def __post_init__(self) -> None:
        if not self.k > 0.0:
            raise ValueError("k must be positive")
        if self.p0 < 0.0:
            raise ValueError("p0 must be non-negative")
        if not self.anchor_p > self.p0:
            raise ValueError("anchor pressure must exceed p0")
        if not self.anchor_tau_w > 0.0:
            raise ValueError("anchor tau_W must be positive")


@dataclass(frozen=True)
class DephasingParameters:
    """Electron-collision dephasing model 1/tau2 = sigma f_ion n(p, T) v_e."""

    sigma: float = 1e-19              # collision cross-section, m^2
    v_e: float = 1e6                  # electron velocity, m/s
    ionization_fraction: float = 0.1  # ionized share of the neutral density
    temperature: float = 300.0        # gas temperature for p -> n, K

    def __post_init__(self) -> None:
        if not self.sigma > 0.0 or not self.v_e > 0.0:
            raise ValueError("sigma and v_e must be positive")
        if not 0.0 < self.ionization_fraction <= 1.0:
            raise ValueError("ionization fraction must lie in (0, 1]")
        if not self.temperature > 0.0:
            raise ValueError("temperature must be positive")


class ValidityCheck(NamedTuple):
    valid: bool
    margin: float


@dataclass(frozen=True)
class ScanRow:
    """Predicted burst observables at one pressure (SI units internally)."""

    p_mbar: float
    N: float                 # m^-3
    theta_r: float           # rad
    tau_W: float             # s
    tau_D: float             # s
    I_peak: float            # W/m^2
    I_peak_norm: float       # relative to the maximum-pressure row
    E_total: float           # J
    E_total_norm: float      # relative to the maximum-pressure row
    E_total_integral: float  # J, diagnostic from integrating the sech^2 burst
    dephasing: float         # s
    validity_margin: float
    valid: bool


def calibrate_density_scale(
    anchor_p: float,
    anchor_tau_w: float,
    p0: float,
    medium_template: TwoLevelMedium,
) -> DensityCalibration:
    """Invert tau_W(N) at the anchor pressure to fix the slope k.

    N_anchor = 4 hbar / (mu0 c omega mu^2 |w0| L tau_W_anchor), then
    k = N_anchor / (anchor_p - p0). Only omega, mu, w0 and L of the template
    matter; its density is ignored.
    """
    if not anchor_tau_w > 0.0:
        raise ValueError("anchor tau_W must be positive")
    if not anchor_p > p0:
        raise ValueError("anchor pressure must exceed the threshold p0")
    if medium_template.w0 == 0.0:
        raise ValueError("w0 = 0 cannot be calibrated")
    k = CONSTANTS
    m = medium_template
    n_anchor = 4.0 * k.hbar / (
        k.mu0 * k.c * m.omega * m.mu**2 * abs(m.w0) * m.L * anchor_tau_w
    )
    return DensityCalibration(
        k=n_anchor / (anchor_p - p0), p0=p0, anchor_p=anchor_p, anchor_tau_w=anchor_tau_w
    )


def density_from_pressure(cal: DensityCalibration, p_mbar: float) -> float:
    """Emitter density N = k (p - p0) in m^-3; p below threshold is an error."""
    if p_mbar < cal.p0:
        raise BelowThresholdError(
            f"pressure {p_mbar} mbar is below the superradiance threshold {cal.p0} mbar"
        )
    return cal.k * (p_mbar - cal.p0)


def medium_at_pressure(
    cal: DensityCalibration, medium_template: TwoLevelMedium, p_mbar: float
) -> TwoLevelMedium:
    return medium_template.with_density(density_from_pressure(cal, p_mbar))


def total_emitted_energy(medium: TwoLevelMedium, theta_r: float, radius: float) -> float:
    """Released energy hbar omega N w0 cos(theta_r) * pi r^2 L, linear in N.

    This is the stored-energy bookkeeping estimate; see
    emitted_energy_integral for the value obtained by integrating the burst
    power from tau_r onward, which differs by the factor (1 + cos)/2 cos.
    """
    if not 0.0 < theta_r < math.pi:
        raise ValueError("theta_r must lie strictly inside (0, pi)")
    if not radius > 0.0:
        raise ValueError("radius must be positive")
    volume = math.pi * radius**2 * medium.L
    return CONSTANTS.hbar * medium.omega * medium.N * medium.w0 * math.cos(theta_r) * volume


def emitted_energy_integral(medium: TwoLevelMedium, theta_r: float, radius: float) -> float:
    """Burst energy from integrating P_s over t >= tau_r in closed form:

    (hbar omega N w0 / 2) (1 + cos theta_r) * pi r^2 L.
    """
    if not 0.0 < theta_r < math.pi:
        raise ValueError("theta_r must lie strictly inside (0, pi)")
    if not radius > 0.0:
        raise ValueError("radius must be positive")
    volume = math.pi * radius**2 * medium.L
    return 0.5 * CONSTANTS.hbar * medium.omega * medium.N * medium.w0 * (1.0 + math.cos(theta_r)) * volume


def dephasing_time(p_mbar: float, params: DephasingParameters) -> float:
    """Collisional dephasing time 1 / (sigma f_ion n v_e) at gas pressure p."""
    if not p_mbar > 0.0:
        raise ValueError("pressure must be positive")
    n = pressure_to_number_density(mbar_to_pascal(p_mbar), params.temperature)
    return 1.0 / (params.sigma * params.ionization_fraction * n * params.v_e)


def superradiance_valid(
    tau_2: float, tau_w: float, tau_d: float, threshold: float = 10.0
) -> ValidityCheck:
    """Margin tau_2 / sqrt(tau_W tau_D) of the no-dephasing assumption.

    The coherent treatment needs the dephasing time to dominate the
    geometric mean of the burst width and delay; `valid` flags margins at or
    above `threshold`.
    """
    if not tau_2 > 0.0 or not tau_w > 0.0 or not tau_d > 0.0:
        raise ValueError("all time scales must be positive")
    margin = tau_2 / math.sqrt(tau_w * tau_d)
    return ValidityCheck(valid=margin >= threshold, margin=margin)


def pressure_scan(
    cal: DensityCalibration,
    seed: SeedPulse,
    medium_template: TwoLevelMedium,
    pressures: Sequence[float],
    dephasing: Optional[DephasingParameters] = None,
    radius: float = 50e-6,
    validity_threshold: float = 10.0,
    dt: Optional[float] = None,
) -> list[ScanRow]:
    """Predict burst observables across a pressure grid (order preserved).

    The seed-stage tipping angle does not depend on N, so a single theta_r
    is computed once and recorded on every row. Peak intensity and total
    energy are normalized to the maximum-pressure row.
    """
    if len(pressures) == 0:
        raise ValueError("at least one pressure is required")
    for p in pressures:
        if p <= cal.p0:
            raise BelowThresholdError(
                f"pressure {p} mbar does not exceed the threshold {cal.p0} mbar"
            )
    if dephasing is None:
        dephasing = DephasingParameters()

    theta_r = bloch_angle(seed, medium_template, seed.tau_r, dt=dt)

    raw = []
    for p in pressures:
        m = medium_at_pressure(cal, medium_template, p)
        tau_w = characteristic_duration(m)
        tau_d = time_delay(m, theta_r, seed.tau_r)
        tau_2 = dephasing_time(p, dephasing)
        check = superradiance_valid(tau_2, tau_w, tau_d, threshold=validity_threshold)
        raw.append(
            (p, m.N, tau_w, tau_d, peak_intensity(m),
             total_emitted_energy(m, theta_r, radius),
             emitted_energy_integral(m, theta_r, radius),
             tau_2, check)
        )

    i_ref = max(range(len(raw)), key=lambda i: raw[i][0])
    i_peak_ref = raw[i_ref][4]
    e_tot_ref = raw[i_ref][5]
    return [
        ScanRow(
            p_mbar=p, N=n, theta_r=theta_r, tau_W=tau_w, tau_D=tau_d,
            I_peak=i_pk, I_peak_norm=i_pk / i_peak_ref,
            E_total=e_tot, E_total_norm=e_tot / e_tot_ref,
            E_total_integral=e_int,
            dephasing=tau_2, validity_margin=check.margin, valid=check.valid,
        )
        for (p, n, tau_w, tau_d, i_pk, e_tot, e_int, tau_2, check) in raw
    ]


def write_scan_csv(path, rows: Sequence[ScanRow]) -> None:
    header = (
        "p_mbar,N_per_cm3,tau_W_ps,tau_D_ps,theta_r_rad,I_peak_W_cm2,"
        "I_peak_norm,E_total_J,E_total_norm,E_total_integral_J,"
        "dephasing_ps,validity_margin\n"
    )
    with Path(path).open("w") as fh:
        fh.write(header)
        for r in rows:
            fh.write(
                f"{float(r.p_mbar)!r},{per_m3_to_per_cm3(float(r.N))!r},{s_to_ps(float(r.tau_W))!r},"
                f"{s_to_ps(float(r.tau_D))!r},{float(r.theta_r)!r},{w_per_m2_to_w_per_cm2(float(r.I_peak))!r},"
                f"{float(r.I_peak_norm)!r},{float(r.E_total)!r},{float(r.E_total_norm)!r},"
                f"{float(r.E_total_integral)!r},{s_to_ps(float(r.dephasing))!r},{float(r.validity_margin)!r}\n"
            )
