"""Run configuration: INI-style file plus command-line overrides.

Keys are globally unique, so sections in the file are cosmetic; a bare
key=value file works too. All values are validated by constructing the
underlying domain objects at parse time.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .constants import (
    cm2_to_m2,
    cm_per_s_to_m_per_s,
    mw_per_cm2_to_w_per_m2,
    ps_to_s,
    um_to_m,
)
from .pressure import DensityCalibration, DephasingParameters, calibrate_density_scale
from .system import SeedPulse, TwoLevelMedium


class ConfigError(ValueError):
    """Bad configuration file, key, or value."""


@dataclass(frozen=True)
class RunConfig:
    # medium
    lambda_nm: float = 391.0
    dipole_debye: float = 1.7
    w0: float = 0.1
    length_mm: float = 10.0
    radius_um: float = 50.0
    # seed (exactly one of seed_intensity_mw_cm2 / seed_e0_v_m may be given)
    seed_intensity_mw_cm2: Optional[float] = 10.0
    seed_e0_v_m: Optional[float] = None
    tau_s_ps: float = 0.26
    tau_r_over_tau_s: float = 3.6
    # density calibration
    anchor_p_mbar: float = 8.0
    anchor_tau_w_ps: float = 1.666
    p0_mbar: float = 2.5
    temperature_k: float = 300.0
    # dephasing
    sigma_cm2: float = 1e-15
    v_e_cm_s: float = 1e8
    ionization_fraction: float = 0.1
    # numerics
    dt_over_tau_s: float = 5e-4
    pendulum_dt_over_tau_w: float = 1e-3
    window_tau_w: float = 20.0
    profile_points: int = 2001
    regime_span_tau_w: float = 10.0
    regime_points: int = 1001
    theta_strong_over_pi: float = 0.6
    fit_tol: float = 1e-8
    fit_max_iter: int = 200
    validity_threshold: float = 10.0
    # output
    out_dir: str = "out"


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_FIELDS = {"profile_points", "regime_points", "fit_max_iter"}
_STR_FIELDS = {"out_dir"}
_OPTIONAL_FIELDS = {"seed_intensity_mw_cm2", "seed_e0_v_m"}


def _coerce(key: str, raw: str):
    if key in _STR_FIELDS:
        return raw
    if key in _OPTIONAL_FIELDS and raw.lower() == "none":
        return None
    try:
        if key in _INT_FIELDS:
            return int(raw)
        value = float(raw)
    except ValueError:
        kind = "an integer" if key in _INT_FIELDS else "a number"
        raise ConfigError(f"config key '{key}' needs {kind}, got '{raw}'") from None
    if not math.isfinite(value):
        raise ConfigError(f"config key '{key}' must be finite, got '{raw}'")
    return value


def _read_file(path: Path) -> dict[str, str]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not any(line.lstrip().startswith("[") for line in text.splitlines()):
        text = "[run]\n" + text
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from None
    flat: dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key in flat:
                raise ConfigError(f"config key '{key}' given more than once")
            flat[key] = value
    return flat


def load_config(path=None, overrides: Sequence[str] = ()) -> RunConfig:
    """Build a RunConfig from an optional file and 'key=value' overrides."""
    raw: dict[str, str] = {}
    if path is not None:
        raw.update(_read_file(Path(path)))
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"override '{item}' is not of the form key=value")
        raw[key.strip()] = value.strip()

    unknown = sorted(set(raw) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config key '{unknown[0]}'")

    values = {key: _coerce(key, raw_value) for key, raw_value in raw.items()}
    if values.get("seed_e0_v_m") is not None:
        if values.get("seed_intensity_mw_cm2") is not None:
            raise ConfigError("give either seed_intensity_mw_cm2 or seed_e0_v_m, not both")
        # The field amplitude replaces the default intensity specification.
        values["seed_intensity_mw_cm2"] = None

    cfg = RunConfig(**values)
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> None:
    """Construct every derived object once so bad values fail at parse time."""
    if (cfg.seed_intensity_mw_cm2 is None) == (cfg.seed_e0_v_m is None):
        raise ConfigError("exactly one of seed_intensity_mw_cm2 / seed_e0_v_m is required")
    try:
        medium_template(cfg)
        seed_pulse(cfg)
        calibration(cfg)
        dephasing_parameters(cfg)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    for key in ("dt_over_tau_s", "pendulum_dt_over_tau_w", "window_tau_w",
                "regime_span_tau_w", "fit_tol", "validity_threshold", "radius_um"):
        if not getattr(cfg, key) > 0.0:
            raise ConfigError(f"config key '{key}' must be positive")
    for key in ("profile_points", "regime_points"):
        if getattr(cfg, key) < 2:
            raise ConfigError(f"config key '{key}' must be at least 2")
    if cfg.fit_max_iter < 1:
        raise ConfigError("config key 'fit_max_iter' must be at least 1")
    if not 0.5 < cfg.theta_strong_over_pi < 1.0:
        raise ConfigError("config key 'theta_strong_over_pi' must lie in (0.5, 1)")


def medium_template(cfg: RunConfig) -> TwoLevelMedium:
    """Medium with everything but the density; scans fill N in per pressure."""
    return TwoLevelMedium.from_lab_units(
        wavelength_nm=cfg.lambda_nm,
        dipole_debye=cfg.dipole_debye,
        density_per_cm3=0.0,
        length_mm=cfg.length_mm,
        w0=cfg.w0,
    )


def seed_pulse(cfg: RunConfig) -> SeedPulse:
    tau_s = ps_to_s(cfg.tau_s_ps)
    tau_r = cfg.tau_r_over_tau_s * tau_s
    if cfg.seed_e0_v_m is not None:
        return SeedPulse(E0=cfg.seed_e0_v_m, tau_s=tau_s, tau_r=tau_r)
    return SeedPulse.from_intensity(
        mw_per_cm2_to_w_per_m2(cfg.seed_intensity_mw_cm2), tau_s=tau_s, tau_r=tau_r
    )


def calibration(cfg: RunConfig) -> DensityCalibration:
    return calibrate_density_scale(
        anchor_p=cfg.anchor_p_mbar,
        anchor_tau_w=ps_to_s(cfg.anchor_tau_w_ps),
        p0=cfg.p0_mbar,
        medium_template=medium_template(cfg),
    )


def dephasing_parameters(cfg: RunConfig) -> DephasingParameters:
    return DephasingParameters(
        sigma=cm2_to_m2(cfg.sigma_cm2),
        v_e=cm_per_s_to_m_per_s(cfg.v_e_cm_s),
        ionization_fraction=cfg.ionization_fraction,
        temperature=cfg.temperature_k,
    )


def radius_m(cfg: RunConfig) -> float:
    return um_to_m(cfg.radius_um)


def dt_seconds(cfg: RunConfig) -> float:
    return cfg.dt_over_tau_s * ps_to_s(cfg.tau_s_ps)


def resolved_items(cfg: RunConfig) -> list[tuple[str, object]]:
    return [(f.name, getattr(cfg, f.name)) for f in dataclasses.fields(RunConfig)]
