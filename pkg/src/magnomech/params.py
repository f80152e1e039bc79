"""Physical parameter model and its configuration-file representation.

All frequencies and rates are stored internally as angular values in rad/s.
Configuration documents quote frequency-like fields the way experimental
papers do, as plain Hz divided by 2 pi; those keys carry an ``_over_2pi_hz``
suffix and are converted on load. Angles are radians (``beta_rad``) and
temperature is kelvin (``temperature_k``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

from .errors import ConfigError

TWO_PI = 2.0 * math.pi

# gyromagnetic conversion, 2 pi x 28 GHz per tesla
GAMMA_GYRO = TWO_PI * 28.0e9

# warn when the mechanical quality factor drops below this
MIN_QUALITY = 1.0e3


@dataclass(frozen=True)
class EffectiveDrive:
    """Drive given directly through the effective magnomechanical coupling.

    coupling_G is the real, non-negative effective coupling in rad/s.
    """

    coupling_G: float

    mode = "effective"

    def validate(self):
        if self.coupling_G < 0:
            raise ConfigError("coupling_G must be >= 0")


@dataclass(frozen=True)
class MicroscopicDrive:
    """Drive given microscopically: single-magnon coupling, drive amplitude,
    and the bare magnon detuning before the mechanical shift.
    """

    g0: float
    epsilon_l: float
    delta_m_bare: float

    mode = "microscopic"

    def validate(self):
        if self.g0 < 0:
            raise ConfigError("g0 must be >= 0")


@dataclass(frozen=True)
class SystemParams:
    """Complete parameter set of the three-mode model.

    Fields mirror the physical symbols: cavity (n), magnon (m), phonon (b).
    delta_m_eff is the effective magnon detuning after the mechanical shift;
    in microscopic drive mode it is derived by the steady-state solver and
    the value stored here is ignored in favor of the converged one.
    delta_B is the signed Barnett shift (sign encodes the rotation/field
    direction along +-z).
    """

    omega_n: float
    omega_b: float
    kappa_n: float
    kappa_m: float
    gamma_b: float
    coupling_J: float
    delta_n: float
    delta_m_eff: float
    delta_B: float
    chi: float
    beta: float
    temperature: float
    drive: EffectiveDrive | MicroscopicDrive = field(
        default_factory=lambda: EffectiveDrive(coupling_G=TWO_PI * 4.8e6)
    )

    def __post_init__(self):
        for name in ("omega_n", "kappa_n", "kappa_m", "gamma_b", "omega_b"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be > 0")
        if self.coupling_J < 0:
            raise ConfigError("coupling_J must be >= 0")
        if self.chi < 0:
            raise ConfigError("chi must be >= 0")
        if self.temperature < 0:
            raise ConfigError("temperature must be >= 0")
        self.drive.validate()
        if self.omega_b / self.gamma_b < MIN_QUALITY:
            warnings.warn(
                "mechanical quality factor omega_b/gamma_b below 1e3; "
                "the delta-correlated noise model assumes Q >> 1",
                stacklevel=2,
            )

    def with_updates(self, **changes) -> "SystemParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


def baseline_params() -> SystemParams:
    """Default operating point of the model.

    omega_n/2pi = 10 GHz, omega_b/2pi = 10 MHz, kappa_n = kappa_m = 2pi x 1
    MHz, gamma_b = 2pi x 100 Hz, J/2pi = 3.2 MHz, G/2pi = 4.8 MHz, T = 10 mK,
    chi = 0.6 kappa_n, beta = pi, detunings delta_n = -omega_b and
    delta_m_eff = omega_b, no rotation (delta_B = 0).
    """
    omega_b = TWO_PI * 10e6
    kappa_n = TWO_PI * 1e6
    return SystemParams(
        omega_n=TWO_PI * 10e9,
        omega_b=omega_b,
        kappa_n=kappa_n,
        kappa_m=TWO_PI * 1e6,
        gamma_b=TWO_PI * 100.0,
        coupling_J=TWO_PI * 3.2e6,
        delta_n=-omega_b,
        delta_m_eff=omega_b,
        delta_B=0.0,
        chi=0.6 * kappa_n,
        beta=math.pi,
        temperature=0.01,
        drive=EffectiveDrive(coupling_G=TWO_PI * 4.8e6),
    )


# configuration keys: field name -> (attribute, kind)
# kind 'freq' converts /2pi Hz <-> rad/s, 'plain' stores the value as given
_SCALAR_KEYS = {
    "omega_n_over_2pi_hz": ("omega_n", "freq"),
    "omega_b_over_2pi_hz": ("omega_b", "freq"),
    "kappa_n_over_2pi_hz": ("kappa_n", "freq"),
    "kappa_m_over_2pi_hz": ("kappa_m", "freq"),
    "gamma_b_over_2pi_hz": ("gamma_b", "freq"),
    "coupling_J_over_2pi_hz": ("coupling_J", "freq"),
    "delta_n_over_2pi_hz": ("delta_n", "freq"),
    "delta_m_eff_over_2pi_hz": ("delta_m_eff", "freq"),
    "delta_B_over_2pi_hz": ("delta_B", "freq"),
    "chi_over_2pi_hz": ("chi", "freq"),
    "beta_rad": ("beta", "plain"),
    "temperature_k": ("temperature", "plain"),
}

_DRIVE_KEYS = {
    "effective": {"coupling_G_over_2pi_hz": ("coupling_G", "freq")},
    "microscopic": {
        "g0_over_2pi_hz": ("g0", "freq"),
        "epsilon_l_rad_per_s": ("epsilon_l", "plain"),
        "delta_m_bare_over_2pi_hz": ("delta_m_bare", "freq"),
    },
}


def params_to_config(params: SystemParams) -> dict:
    """Render params as a flat configuration dict in /2pi-Hz quoting units."""
    doc = {}
    for key, (attr, kind) in _SCALAR_KEYS.items():
        value = getattr(params, attr)
        doc[key] = value / TWO_PI if kind == "freq" else value
    drive_doc = {"mode": params.drive.mode}
    for key, (attr, kind) in _DRIVE_KEYS[params.drive.mode].items():
        value = getattr(params.drive, attr)
        drive_doc[key] = value / TWO_PI if kind == "freq" else value
    doc["drive"] = drive_doc
    return doc


def params_from_config(doc: dict, base: SystemParams | None = None) -> SystemParams:
    """Build SystemParams from a configuration dict.

    Unspecified keys fall back to ``base`` (the baseline operating point by
    default), so partial configs are valid. Raises ConfigError on unknown
    keys or malformed values.
    """
    from .errors import ConfigError

    if base is None:
        base = baseline_params()
    if not isinstance(doc, dict):
        raise ConfigError(f"config must be a JSON object, got {type(doc).__name__}")

    changes = {}
    for key, value in doc.items():
        if key == "drive":
            continue
        if key not in _SCALAR_KEYS:
            raise ConfigError(f"unknown config key: {key!r}")
        attr, kind = _SCALAR_KEYS[key]
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"config key {key!r} must be a number, got {value!r}") from None
        changes[attr] = value * TWO_PI if kind == "freq" else value

    drive = base.drive
    if "drive" in doc:
        drive_doc = doc["drive"]
        if not isinstance(drive_doc, dict):
            raise ConfigError("drive must be an object")
        mode = drive_doc.get("mode", base.drive.mode)
        if mode not in _DRIVE_KEYS:
            raise ConfigError(f"unknown drive mode: {mode!r}")
        keys = _DRIVE_KEYS[mode]
        kwargs = {}
        for key, value in drive_doc.items():
            if key == "mode":
                continue
            if key not in keys:
                raise ConfigError(f"unknown drive config key: {key!r}")
            attr, kind = keys[key]
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ConfigError(f"drive key {key!r} must be a number, got {value!r}") from None
            kwargs[attr] = value * TWO_PI if kind == "freq" else value
        if mode == base.drive.mode:
            merged = {
                attr: getattr(base.drive, attr)
                for attr, _ in keys.values()
            }
            merged.update(kwargs)
            kwargs = merged
        missing = {attr for attr, _ in keys.values()} - set(kwargs)
        if missing:
            raise ConfigError(f"drive mode {mode!r} missing keys for: {sorted(missing)}")
        cls = EffectiveDrive if mode == "effective" else MicroscopicDrive
        try:
            drive = cls(**kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    try:
        return replace(base, drive=drive, **changes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def apply_dotted_overrides(doc: dict, assignments: list[str]) -> dict:
    """Apply --set style 'key=value' strings onto a config dict.

    Keys use the configuration naming (e.g. delta_n_over_2pi_hz or
    drive.coupling_G_over_2pi_hz); values are parsed as JSON scalars so
    numbers and strings both work.
    """
    import json

    from .errors import ConfigError

    out = dict(doc)
    for item in assignments:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        parts = key.split(".")
        target = out
        for part in parts[:-1]:
            existing = target.get(part)
            if not isinstance(existing, dict):
                existing = {}
            existing = dict(existing)
            target[part] = existing
            target = existing
        target[parts[-1]] = value
    return out
