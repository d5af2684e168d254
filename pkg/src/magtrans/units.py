"""Physical constants and unit conversions.

Internally every frequency and rate is angular (rad/s). Ordinary
frequencies (Hz) are converted exactly once, at the boundary where a
configuration or a user call enters the library.

"""

import numpy as np

__all__ = [
    "HBAR",
    "SPEED_OF_LIGHT",
    "TWO_PI",
    "UNITS",
    "BASE_UNITS",
    "hz_to_rad",
    "rad_to_hz",
    "to_linear",
    "to_decibel",
    "parse_quantity",
]

HBAR = 1.054571817e-34  # J s
SPEED_OF_LIGHT = 299792458.0  # m / s
TWO_PI = 2.0 * np.pi

# scale factors to SI base units, keyed by dimension
UNITS = {
    "frequency": {
        "Hz": 1.0,
        "kHz": 1e3,
        "MHz": 1e6,
        "GHz": 1e9,
        "THz": 1e12,
    },
    "field": {"T": 1.0, "mT": 1e-3},
    "length": {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9},
    "power": {"W": 1.0, "mW": 1e-3, "uW": 1e-6, "nW": 1e-9},
    "gyro": {"Hz/T": 1.0, "MHz/T": 1e6, "GHz/T": 1e9},
}

# unit written back by serializers, one per dimension
BASE_UNITS = {
    "frequency": "Hz",
    "field": "T",
    "length": "m",
    "power": "W",
    "gyro": "Hz/T",
}


def hz_to_rad(f):
    """Convert ordinary frequency (Hz) to angular frequency (rad/s)."""
    return TWO_PI * np.asarray(f, dtype=float) if np.ndim(f) else TWO_PI * f


def rad_to_hz(omega):
    """Convert angular frequency (rad/s) to ordinary frequency (Hz)."""
    if np.ndim(omega):
        return np.asarray(omega, dtype=float) / TWO_PI
    return omega / TWO_PI


def to_linear(value_db):
    """Convert a power quantity from decibels, 10 log10(x), to linear."""
    return 10.0 ** (np.asarray(value_db, dtype=float) / 10.0)


def to_decibel(value):
    """Convert a linear power quantity to decibels, 10 log10(x)."""
    return 10.0 * np.log10(np.asarray(value, dtype=float))


def parse_quantity(text, dimension):
    """Parse a number followed by a unit suffix.

    Parameters
    ----------
    text : str
        Value such as ``"6.56 MHz"``.
    dimension : str
        Key of :data:`UNITS` naming the allowed suffixes.

    Returns
    -------
    float
        Value in SI base units of the dimension.

    Raises
    ------
    ValueError
        If the suffix is missing or not allowed for the dimension, or
        if the number does not parse.

    """
    parts = text.split()
    if len(parts) != 2:
        raise ValueError(
            "expected '<number> <unit>' with unit one of {}".format(
                ", ".join(UNITS[dimension])
            )
        )
    number, suffix = parts
    table = UNITS[dimension]
    if suffix not in table:
        raise ValueError(
            "unit '{}' is not one of {}".format(suffix, ", ".join(table))
        )
    value = float(number) * table[suffix]
    if not np.isfinite(value):
        raise ValueError("value is not finite")
    return value
