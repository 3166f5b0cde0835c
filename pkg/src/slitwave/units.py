"""Physical constants and unit-suffix parsing.

All internal quantities are SI.  Configuration files may quote lengths
and times with metric suffixes ("1 um", "0.5 angstrom", "2 ms"); this
module resolves them to plain floats.
"""

from __future__ import annotations

import re

from .errors import ConfigError

# CODATA 2018 reduced Planck constant, J s
HBAR = 1.054571817e-34

_LENGTH_UNITS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
    "pm": 1e-12,
    "angstrom": 1e-10,
    "A": 1e-10,
    "Å": 1e-10,
}

_TIME_UNITS = {
    "s": 1.0,
    "ms": 1e-3,
    "us": 1e-6,
    "µs": 1e-6,
    "ns": 1e-9,
}

_MASS_UNITS = {
    "kg": 1.0,
    "g": 1e-3,
    "amu": 1.66053906660e-27,
    "u": 1.66053906660e-27,
}

_QUANTITY = re.compile(r"^\s*([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*([^\s]*)\s*$")


def _parse(value, units, kind, field=None):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"expected a number or '<number> <unit>' string for {kind}, "
                          f"got {value!r}", field=field)
    match = _QUANTITY.match(value)
    if not match:
        raise ConfigError(f"cannot parse {kind} quantity {value!r}", field=field)
    number, suffix = match.groups()
    try:
        magnitude = float(number)
    except ValueError:
        raise ConfigError(f"bad numeric part in {kind} quantity {value!r}", field=field)
    if not suffix:
        return magnitude
    if suffix not in units:
        raise ConfigError(f"unknown {kind} unit {suffix!r} in {value!r} "
                          f"(known: {', '.join(sorted(units))})", field=field)
    return magnitude * units[suffix]


def parse_length(value, field=None):
    """Resolve a length given as a float (meters) or a suffixed string."""
    return _parse(value, _LENGTH_UNITS, "length", field)


def parse_time(value, field=None):
    """Resolve a time given as a float (seconds) or a suffixed string."""
    return _parse(value, _TIME_UNITS, "time", field)


def parse_mass(value, field=None):
    """Resolve a mass given as a float (kg) or a suffixed string."""
    return _parse(value, _MASS_UNITS, "mass", field)


def parse_wavenumber(value, field=None):
    """Resolve a wavenumber given in 1/m, or as '1/<length unit>' string."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str) and "/" in value:
        number, _, unit = value.partition("/")
        try:
            magnitude = float(number.strip())
        except ValueError:
            raise ConfigError(f"cannot parse wavenumber {value!r}", field=field)
        unit = unit.strip()
        if unit not in _LENGTH_UNITS:
            raise ConfigError(f"unknown length unit {unit!r} in wavenumber {value!r}",
                              field=field)
        return magnitude / _LENGTH_UNITS[unit]
    return _parse(value, {}, "wavenumber", field)
