"""Circuit configuration files: flat TOML-style key-value parsing.

Config files hold one flat table of ``key = value`` pairs with ``#``
comments. Keys are the circuit parameter names with unit suffixes; values
convert to SI at this boundary:

    critical_current_ua      = 1.25      # microampere
    junction_capacitance_ff  = 90.0      # femtofarad
    phase_velocity_m_per_s   = 1.2e8
    char_impedance_ohm       = 55.0
    drive_frequency_ghz      = 18.6      # cyclic; converted to rad/s
    ej_bias_ratio            = 1.3       # or: ext_flux_bias_phi0 = 0.28
    ej_drive_ratio           = 0.25

The parser covers the flat subset of TOML (numbers, booleans, quoted
strings); nested tables are rejected. Full TOML files that stick to one
flat table parse identically.
"""

from __future__ import annotations

import math
from pathlib import Path

from .circuit import CircuitParams
from .constants import CODATA
from .errors import ConfigError

REQUIRED_KEYS = (
    "critical_current_ua",
    "junction_capacitance_ff",
    "phase_velocity_m_per_s",
    "char_impedance_ohm",
    "drive_frequency_ghz",
)
OPTIONAL_KEYS = ("ej_bias_ratio", "ej_drive_ratio", "ext_flux_bias_phi0")


def _parse_scalar(text: str, path: str, lineno: int):
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{path}:{lineno}: cannot parse value {text!r}") from None


def read_key_values(path) -> dict:
    """Parse a flat key-value file into a dict."""
    result: dict = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            raise ConfigError(
                f"{path}:{lineno}: nested tables are not supported; "
                "use one flat key-value table"
            )
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if not key or not value:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key in result:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        result[key] = _parse_scalar(value, str(path), lineno)
    return result


def _require_number(values: dict, key: str, path) -> float:
    if key not in values:
        raise ConfigError(f"{path}: missing required key {key!r}")
    value = values[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: key {key!r} must be a number, got {value!r}")
    return float(value)


def load_circuit_config(path) -> CircuitParams:
    """Read a circuit config file and convert units to SI."""
    values = read_key_values(path)
    unknown = set(values) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")

    bias_given = "ej_bias_ratio" in values
    flux_given = "ext_flux_bias_phi0" in values
    if bias_given == flux_given:
        raise ConfigError(
            f"{path}: give exactly one of ej_bias_ratio and ext_flux_bias_phi0"
        )

    kwargs = dict(
        critical_current=_require_number(values, "critical_current_ua", path) * 1e-6,
        junction_capacitance=_require_number(values, "junction_capacitance_ff", path) * 1e-15,
        phase_velocity=_require_number(values, "phase_velocity_m_per_s", path),
        char_impedance=_require_number(values, "char_impedance_ohm", path),
        drive_frequency=2.0 * math.pi * _require_number(values, "drive_frequency_ghz", path) * 1e9,
        ej_drive_ratio=float(values.get("ej_drive_ratio", 0.0)),
    )
    if bias_given:
        kwargs["ej_bias_ratio"] = _require_number(values, "ej_bias_ratio", path)
    else:
        kwargs["ext_flux_bias"] = (
            _require_number(values, "ext_flux_bias_phi0", path) * CODATA.flux_quantum
        )
    try:
        return CircuitParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
