"""Unit-suffixed quantity parsing and printing.

Everything inside the package is SI. Suffixed strings such as ``"3THz"``,
``"20um"`` or ``"0.8eV"`` are only accepted at the edges (CLI, config files).
Energies are converted to joules.
"""

import re

from .constants import ELEMENTARY_CHARGE
from .errors import ConfigError

SIGNIFICANT_DIGITS = 9

# suffix -> (dimension, factor to SI)
UNITS = {
    "Hz": ("frequency", 1.0),
    "kHz": ("frequency", 1e3),
    "MHz": ("frequency", 1e6),
    "GHz": ("frequency", 1e9),
    "THz": ("frequency", 1e12),
    "m": ("length", 1.0),
    "mm": ("length", 1e-3),
    "um": ("length", 1e-6),
    "µm": ("length", 1e-6),
    "nm": ("length", 1e-9),
    "eV": ("energy", ELEMENTARY_CHARGE),
    "meV": ("energy", 1e-3 * ELEMENTARY_CHARGE),
    "J": ("energy", 1.0),
    "s": ("time", 1.0),
    "ps": ("time", 1e-12),
    "fs": ("time", 1e-15),
    "K": ("temperature", 1.0),
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-zµ]*)\s*$")


def parse_quantity(text, dimension=None, default_unit=None):
    """Parse ``"<number><unit>"`` into an SI float.

    A bare number is interpreted in ``default_unit`` when given, otherwise
    as SI. ``dimension`` restricts which suffixes are accepted.
    """
    if isinstance(text, (int, float)):
        text = repr(text)
    match = _QUANTITY.match(str(text))
    if match is None:
        raise ConfigError(f"cannot parse quantity {text!r}")
    number, unit = match.groups()
    unit = unit or default_unit
    if not unit:
        return float(number)
    if unit not in UNITS:
        raise ConfigError(f"unknown unit {unit!r} in {text!r}")
    dim, factor = UNITS[unit]
    if dimension is not None and dim != dimension:
        raise ConfigError(f"expected a {dimension} in {text!r}, got a {dim}")
    return float(number) * factor


def format_number(value, digits=SIGNIFICANT_DIGITS):
    """Fixed-width-agnostic ``%g`` style with ``digits`` significant digits."""
    if isinstance(value, complex):
        sign = "+" if value.imag >= 0 or value.imag != value.imag else "-"
        return f"{format_number(value.real, digits)}{sign}{format_number(abs(value.imag), digits)}j"
    return f"{value:.{digits}g}"


def format_quantity(value, unit, digits=SIGNIFICANT_DIGITS):
    """Express an SI ``value`` in ``unit`` and print it with its suffix."""
    _, factor = UNITS[unit]
    return f"{format_number(value / factor, digits)}{unit}"
