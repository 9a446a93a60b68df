"""Seed-stage dynamics of the emitter Bloch vector (u, v, w).

On resonance and in the rotating-wave approximation the seed drives

    du/dt = 0,   dv/dt = Omega(t) w,   dw/dt = -Omega(t) v,

with instantaneous Rabi frequency Omega(t) = mu E0 f(t) / hbar. Starting
from (0, 0, w0) the solution is a pure rotation in the v-w plane through the
accumulated pulse area theta(t) = (mu E0 / hbar) * integral of f, which this
module computes both by direct quadrature and by step-by-step integration so
each can serve as a check on the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Optional

import numpy as np

from .constants import CONSTANTS, s_to_ps
from .errors import NumericalError
from .system import SeedPulse, TwoLevelMedium

__all__ = [
    "BlochState",
    "BlochTrajectory",
    "rabi_frequency_peak",
    "bloch_angle",
    "integrate_bloch_rwa",
    "analytic_seed_solution",
    "coherence_amplitudes",
]

# Default integration/quadrature step relative to the seed duration.
STEPS_PER_TAU_S = 2000


@dataclass(frozen=True)
class BlochState:
    """Bloch vector sample at one instant."""

    t: float
    u: float
    v: float
    w: float


@dataclass(frozen=True)
class BlochTrajectory:
    """Time-ordered Bloch vector history with the accumulated pulse area."""

    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    theta: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.t)
        for name in ("u", "v", "w", "theta"):
            if len(getattr(self, name)) != n:
                raise ValueError("all trajectory columns must have equal length")
        if n < 2 or not np.all(np.diff(self.t) > 0.0):
            raise ValueError("trajectory times must be strictly increasing")
        for name in ("t", "u", "v", "w", "theta"):
            getattr(self, name).setflags(write=False)

    def __len__(self) -> int:
        return len(self.t)

    def __iter__(self) -> Iterator[BlochState]:
        for i in range(len(self.t)):
            yield self.state(i)

    def state(self, i: int) -> BlochState:
        return BlochState(float(self.t[i]), float(self.u[i]), float(self.v[i]), float(self.w[i]))

    @property
    def final_state(self) -> BlochState:
        return self.state(len(self.t) - 1)

    def write_csv(self, path) -> None:
        with Path(path).open("w") as fh:
            fh.write("t_ps,u,v,w,theta_rad\n")
            for i in range(len(self.t)):
                fh.write(
                    f"{s_to_ps(float(self.t[i]))!r},{float(self.u[i])!r},{float(self.v[i])!r},"
                    f"{float(self.w[i])!r},{float(self.theta[i])!r}\n"
                )


def rabi_frequency_peak(pulse: SeedPulse, medium: TwoLevelMedium) -> float:
    """Peak Rabi frequency mu E0 / hbar in rad/s."""
    return medium.mu * pulse.E0 / CONSTANTS.hbar


def _resolve_envelope(pulse: SeedPulse, envelope: Optional[Callable]) -> Callable:
    return pulse.field_envelope if envelope is None else envelope


def bloch_angle(
    pulse: SeedPulse,
    medium: TwoLevelMedium,
    t: float,
    dt: Optional[float] = None,
    envelope: Optional[Callable] = None,
) -> float:
    """Accumulated pulse area theta(t) via composite Simpson quadrature.

    The interval [0, t] is split into an even number of panels no wider than
    dt (default tau_s / 2000). The envelope callable must accept arrays;
    by default the pulse's own Gaussian envelope is used.
    """
    if t < 0.0:
        raise ValueError("t must be non-negative")
    if t == 0.0:
        return 0.0
    if dt is None:
        dt = pulse.tau_s / STEPS_PER_TAU_S
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    f = _resolve_envelope(pulse, envelope)
    n = max(2, math.ceil(t / dt))
    if n % 2:
        n += 1
    x = np.linspace(0.0, t, n + 1)
    fx = np.asarray(f(x), dtype=float)
    h = t / n
    area = (h / 3.0) * (fx[0] + fx[-1] + 4.0 * fx[1:-1:2].sum() + 2.0 * fx[2:-1:2].sum())
    return float(rabi_frequency_peak(pulse, medium) * area)


def integrate_bloch_rwa(
    pulse: SeedPulse,
    medium: TwoLevelMedium,
    t_end: float,
    dt: Optional[float] = None,
    envelope: Optional[Callable] = None,
) -> BlochTrajectory:
    """Integrate the resonant RWA Bloch equations from t = 0 to t_end.

    Classical fixed-step fourth-order Runge-Kutta on (v, w), with the pulse
    area theta carried along as a fourth component (u stays identically at
    its initial value 0). The actual step is t_end / n with n chosen so the
    step does not exceed the requested dt and the grid lands exactly on
    t_end. Raises NumericalError if the state stops being finite.
    """
    if not t_end > 0.0:
        raise ValueError("t_end must be positive")
    if dt is None:
        dt = pulse.tau_s / STEPS_PER_TAU_S
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    if dt >= t_end:
        raise ValueError("dt must be smaller than t_end")
    f = _resolve_envelope(pulse, envelope)
    n = max(1, math.ceil(t_end / dt - 1e-12))
    h = t_end / n

    # Envelope values at all full- and half-step nodes, evaluated in one shot.
    nodes = np.linspace(0.0, t_end, 2 * n + 1)
    omega = rabi_frequency_peak(pulse, medium) * np.asarray(f(nodes), dtype=float)

    v_arr = np.empty(n + 1)
    w_arr = np.empty(n + 1)
    th_arr = np.empty(n + 1)
    v, w, th = 0.0, medium.w0, 0.0
    v_arr[0], w_arr[0], th_arr[0] = v, w, th

    for i in range(n):
        o1, o2, o3 = omega[2 * i], omega[2 * i + 1], omega[2 * i + 2]
        k1v = o1 * w
        k1w = -o1 * v
        k2v = o2 * (w + 0.5 * h * k1w)
        k2w = -o2 * (v + 0.5 * h * k1v)
        k3v = o2 * (w + 0.5 * h * k2w)
        k3w = -o2 * (v + 0.5 * h * k2v)
        k4v = o3 * (w + h * k3w)
        k4w = -o3 * (v + h * k3v)
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        th += (h / 6.0) * (o1 + 4.0 * o2 + o3)
        if not (math.isfinite(v) and math.isfinite(w)):
            raise NumericalError(f"Bloch state became non-finite at t = {(i + 1) * h:.6e} s")
        v_arr[i + 1], w_arr[i + 1], th_arr[i + 1] = v, w, th

    return BlochTrajectory(
        t=np.linspace(0.0, t_end, n + 1),
        u=np.zeros(n + 1),
        v=v_arr,
        w=w_arr,
        theta=th_arr,
    )


def analytic_seed_solution(
    pulse: SeedPulse,
    medium: TwoLevelMedium,
    t: float,
    dt: Optional[float] = None,
    envelope: Optional[Callable] = None,
) -> BlochState:
    """Closed-form seed-stage state (0, w0 sin theta, w0 cos theta) at time t."""
    theta = bloch_angle(pulse, medium, t, dt=dt, envelope=envelope)
    return BlochState(t=t, u=0.0, v=medium.w0 * math.sin(theta), w=medium.w0 * math.cos(theta))


def coherence_amplitudes(state: BlochState) -> tuple[complex, complex]:
    """Slowly varying off-diagonal density-matrix elements (rho21, rho12).

    Inverts u = rho21 + rho12, v = i(rho21 - rho12); the pair is Hermitian,
    rho12 = conj(rho21).
    """
    rho21 = 0.5 * (state.u - 1j * state.v)
    rho12 = 0.5 * (state.u + 1j * state.v)
    return rho21, rho12
