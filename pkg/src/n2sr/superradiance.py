"""Closed-form superradiant burst that follows the seed stage.

Once the seed is gone, the tipped Bloch vector obeys the pendulum equation

    d theta / dt = sign(w0) * sin(theta) / tau_W,
    tau_W = 4 hbar / (mu0 c omega mu^2 |w0| N L),

whose solution through theta(tau_r) = theta_r is

    theta(t) = 2 arctan( exp( sign(w0) * (t - tau_D) / tau_W ) ),
    tau_D    = tau_r - sign(w0) * tau_W * ln tan(theta_r / 2).

Both signs of w0 give the same emitted burst shapes: a hyperbolic-secant
field, a sech^2 power peaking at tau_D with value P0, and a stored-energy
density that relaxes along -tanh. An independent fixed-step integrator for
the pendulum equation is provided so the closed forms can be checked rather
than trusted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .bloch import bloch_angle
from .constants import CONSTANTS, s_to_ps
from .errors import NumericalError
from .system import SeedPulse, TwoLevelMedium

__all__ = [
    "NoSuperradianceError",
    "Regime",
    "classify_regime",
    "characteristic_duration",
    "spontaneous_decay_time",
    "time_delay",
    "superradiant_bloch_angle",
    "SuperradianceSolution",
    "solve_after_seed",
    "solve_from_seed",
    "peak_power_density",
    "peak_intensity",
    "energy_density",
    "emitted_power_density",
    "emitted_intensity",
    "emitted_field_envelope",
    "integrate_pendulum",
    "write_profile_csv",
]


class NoSuperradianceError(ValueError):
    """The medium cannot superradiate (no emitters, or no population imbalance)."""


class Regime(enum.IntEnum):
    """The four qualitative behaviours, indexed by (sign of w0, seed strength).

    An inverted medium (w0 > 0) amplifies: a weak seed (theta_r < pi/2)
    leaves most energy in the medium and the burst peaks later at tau_D,
    while a strong seed has already tipped the Bloch vector past the equator
    and the emission only decays. An absorbing medium (w0 < 0) mirrors this:
    a weak seed is simply re-emitted in decaying fashion, whereas a strong
    seed stores pulse energy in the medium, which is then released as a
    delayed burst.
    """

    INVERTED_WEAK_SEED = 1
    INVERTED_STRONG_SEED = 2
    ABSORBING_WEAK_SEED = 3
    ABSORBING_STRONG_SEED = 4

    @property
    def delayed_peak(self) -> bool:
        return self in (Regime.INVERTED_WEAK_SEED, Regime.ABSORBING_STRONG_SEED)

    @property
    def energy_source(self) -> str:
        inverted = self in (Regime.INVERTED_WEAK_SEED, Regime.INVERTED_STRONG_SEED)
        return "medium" if inverted else "seed"


def classify_regime(w0: float, theta_r: float) -> Regime:
    """Map (w0, theta_r) to one of the four regimes.

    Boundary values w0 = 0 and theta_r in {0, pi/2, pi} are degenerate (no
    emission, or exactly balanced) and are rejected.
    """
    if w0 == 0.0:
        raise ValueError("w0 = 0 is degenerate: no population imbalance")
    if not 0.0 < theta_r < math.pi:
        raise ValueError("theta_r must lie strictly inside (0, pi)")
    if theta_r == 0.5 * math.pi:
        raise ValueError("theta_r = pi/2 is the degenerate boundary between regimes")
    weak = theta_r < 0.5 * math.pi
    if w0 > 0.0:
        return Regime.INVERTED_WEAK_SEED if weak else Regime.INVERTED_STRONG_SEED
    return Regime.ABSORBING_WEAK_SEED if weak else Regime.ABSORBING_STRONG_SEED


def characteristic_duration(medium: TwoLevelMedium) -> float:
    """Collective emission time scale tau_W = 4 hbar / (mu0 c omega mu^2 |w0| N L)."""
    if medium.N == 0.0 or medium.w0 == 0.0:
        raise NoSuperradianceError("collective emission requires N > 0 and w0 != 0")
    k = CONSTANTS
    denom = k.mu0 * k.c * medium.omega * medium.mu**2 * abs(medium.w0) * medium.N * medium.L
    return 4.0 * k.hbar / denom


def spontaneous_decay_time(medium: TwoLevelMedium) -> float:
    """Single-emitter radiative lifetime 3 pi eps0 hbar c^3 / (omega^3 mu^2)."""
    k = CONSTANTS
    return 3.0 * math.pi * k.eps0 * k.hbar * k.c**3 / (medium.omega**3 * medium.mu**2)


def _branch(w0: float) -> float:
    return math.copysign(1.0, w0)


def time_delay(medium: TwoLevelMedium, theta_r: float, tau_r: float) -> float:
    """Burst delay tau_D = tau_r - sign(w0) tau_W ln tan(theta_r / 2).

    For an inverted medium this exceeds tau_r exactly when theta_r < pi/2
    (the smaller the tipping angle, the longer the lever arm of the unstable
    equilibrium); for an absorbing medium the inequality flips. Diverges
    logarithmically as theta_r -> 0 or pi.
    """
    if not 0.0 < theta_r < math.pi:
        raise ValueError("theta_r must lie strictly inside (0, pi)")
    tau_w = characteristic_duration(medium)
    # ln tan(pi/4) is 0; special-cased so the midpoint maps to tau_r exactly.
    log_tan = 0.0 if theta_r == 0.5 * math.pi else math.log(math.tan(0.5 * theta_r))
    return tau_r - _branch(medium.w0) * tau_w * log_tan


def superradiant_bloch_angle(t, tau_d: float, tau_w: float):
    """Pendulum solution theta(t) = 2 arctan(exp((t - tau_D)/tau_W)) for w0 > 0.

    Runs from 0 at t -> -inf to pi at t -> +inf, passing pi/2 at tau_D.
    Accepts scalars or arrays.
    """
    if not tau_w > 0.0:
        raise ValueError("tau_W must be positive")
    # exp overflow far past tau_D saturates to arctan(inf) = pi/2, which is
    # exactly the limit we want, so the warning carries no information.
    with np.errstate(over="ignore"):
        return 2.0 * np.arctan(np.exp((np.asarray(t, dtype=float) - tau_d) / tau_w))


@dataclass(frozen=True)
class SuperradianceSolution:
    """Closed-form description of one burst, frozen after construction."""

    medium: TwoLevelMedium
    theta_r: float   # Bloch angle handed over by the seed stage, rad
    tau_r: float     # seed handover time, s
    tau_W: float     # burst width parameter, s
    tau_D: float     # burst peak time, s
    P0: float        # peak emitted power density, W/m^3
    I0: float        # peak emitted intensity P0 * L, W/m^2
    regime: Regime

    def __post_init__(self) -> None:
        if not self.tau_W > 0.0:
            raise ValueError("tau_W must be positive")
        if self.I0 != self.P0 * self.medium.L:
            raise ValueError("I0 must equal P0 * L")
        if self.regime != classify_regime(self.medium.w0, self.theta_r):
            raise ValueError("regime tag inconsistent with (w0, theta_r)")

    def _x(self, t):
        return _branch(self.medium.w0) * (np.asarray(t, dtype=float) - self.tau_D) / self.tau_W

    def bloch_angle(self, t):
        """theta(t) on this solution's branch."""
        return 2.0 * np.arctan(np.exp(self._x(t)))

    def population_difference(self, t):
        """w(t) = w0 cos theta(t) = -|w0| tanh((t - tau_D)/tau_W)."""
        return -abs(self.medium.w0) * np.tanh((np.asarray(t, dtype=float) - self.tau_D) / self.tau_W)

    def time_grid(self, window_tau_w: float = 20.0, n: int = 2001) -> np.ndarray:
        """Uniform grid spanning tau_D +- window_tau_w * tau_W."""
        if not window_tau_w > 0.0 or n < 2:
            raise ValueError("window must be positive and n at least 2")
        return np.linspace(self.tau_D - window_tau_w * self.tau_W,
                           self.tau_D + window_tau_w * self.tau_W, n)


def peak_power_density(medium: TwoLevelMedium) -> float:
    """Burst peak power per volume, P0 = mu0 c omega^2 mu^2 w0^2 N^2 L / 8."""
    k = CONSTANTS
    return 0.125 * k.mu0 * k.c * medium.omega**2 * medium.mu**2 * medium.w0**2 * medium.N**2 * medium.L


def peak_intensity(medium: TwoLevelMedium) -> float:
    """Burst peak intensity, exactly peak_power_density * L (scales as N^2 L^2)."""
    return peak_power_density(medium) * medium.L


def solve_after_seed(medium: TwoLevelMedium, theta_r: float, tau_r: float) -> SuperradianceSolution:
    """Build the burst solution from the handover state (theta_r at tau_r)."""
    regime = classify_regime(medium.w0, theta_r)
    tau_w = characteristic_duration(medium)
    tau_d = time_delay(medium, theta_r, tau_r)
    p0 = peak_power_density(medium)
    return SuperradianceSolution(
        medium=medium,
        theta_r=theta_r,
        tau_r=tau_r,
        tau_W=tau_w,
        tau_D=tau_d,
        P0=p0,
        I0=p0 * medium.L,
        regime=regime,
    )


def solve_from_seed(
    pulse: SeedPulse, medium: TwoLevelMedium, dt: Optional[float] = None
) -> SuperradianceSolution:
    """Propagate the seed stage to tau_r by quadrature, then hand over."""
    theta_r = bloch_angle(pulse, medium, pulse.tau_r, dt=dt)
    return solve_after_seed(medium, theta_r, pulse.tau_r)


def energy_density(t, sol: SuperradianceSolution):
    """Stored excitation energy density, -(hbar omega |w0| N / 2) tanh((t - tau_D)/tau_W).

    Equals (hbar omega N / 2) w0 cos theta(t) on either branch: it decreases
    through zero at tau_D as the medium radiates. J/m^3.
    """
    m = sol.medium
    x = (np.asarray(t, dtype=float) - sol.tau_D) / sol.tau_W
    return -0.5 * CONSTANTS.hbar * m.omega * abs(m.w0) * m.N * np.tanh(x)


def emitted_power_density(t, sol: SuperradianceSolution):
    """Radiated power per volume, P0 sech^2((t - tau_D)/tau_W). W/m^3."""
    x = (np.asarray(t, dtype=float) - sol.tau_D) / sol.tau_W
    return sol.P0 / np.cosh(x) ** 2


def emitted_intensity(t, sol: SuperradianceSolution):
    """Intensity leaving the medium: emitted power density times L. W/m^2."""
    return emitted_power_density(t, sol) * sol.medium.L


def emitted_field_envelope(t, sol: SuperradianceSolution):
    """Emitted field amplitude (mu0 omega c mu |w0| N L / 2) sech((t - tau_D)/tau_W). V/m."""
    m = sol.medium
    k = CONSTANTS
    amp = 0.5 * k.mu0 * m.omega * k.c * m.mu * abs(m.w0) * m.N * m.L
    x = (np.asarray(t, dtype=float) - sol.tau_D) / sol.tau_W
    return amp / np.cosh(x)


def integrate_pendulum(
    theta_r: float,
    tau_r: float,
    medium: TwoLevelMedium,
    t_end: float,
    dt: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 integration of d theta/dt = sign(w0) sin(theta)/tau_W.

    Starts from theta(tau_r) = theta_r and returns (t, theta) arrays on a
    uniform grid that lands exactly on t_end. This deliberately shares no
    code with the closed forms above. Raises NumericalError on non-finite
    states.
    """
    if not 0.0 < theta_r < math.pi:
        raise ValueError("theta_r must lie strictly inside (0, pi)")
    if not t_end > tau_r:
        raise ValueError("t_end must exceed tau_r")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    rate = _branch(medium.w0) / characteristic_duration(medium)

    span = t_end - tau_r
    n = max(1, math.ceil(span / dt - 1e-12))
    h = span / n
    theta = np.empty(n + 1)
    theta[0] = theta_r
    th = theta_r
    for i in range(n):
        k1 = rate * math.sin(th)
        k2 = rate * math.sin(th + 0.5 * h * k1)
        k3 = rate * math.sin(th + 0.5 * h * k2)
        k4 = rate * math.sin(th + h * k3)
        th += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not math.isfinite(th):
            raise NumericalError(f"pendulum angle became non-finite at t = {tau_r + (i + 1) * h:.6e} s")
        theta[i + 1] = th
    return np.linspace(tau_r, t_end, n + 1), theta


def write_profile_csv(path, sol: SuperradianceSolution, t: Optional[np.ndarray] = None) -> None:
    """Write burst profiles on grid t (default: tau_D +- 20 tau_W, 2001 points)."""
    if t is None:
        t = sol.time_grid()
    theta = sol.bloch_angle(t)
    e = energy_density(t, sol)
    p = emitted_power_density(t, sol)
    i_s = emitted_intensity(t, sol)
    f = emitted_field_envelope(t, sol)
    with Path(path).open("w") as fh:
        fh.write("t_ps,theta_rad,energy_density_J_m3,power_W_m3,intensity_W_m2,field_V_m\n")
        for j in range(len(t)):
            fh.write(
                f"{s_to_ps(float(t[j]))!r},{float(theta[j])!r},{float(e[j])!r},"
                f"{float(p[j])!r},{float(i_s[j])!r},{float(f[j])!r}\n"
            )
