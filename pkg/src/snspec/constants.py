"""Physical constants and unit conversion.

Everything internal is SI.  Constants come from scipy's CODATA tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    G: float = _sc.G
    hbar: float = _sc.hbar
    h: float = _sc.h
    c: float = _sc.c
    kB: float = _sc.k
    amu: float = _sc.atomic_mass

    def __post_init__(self):
        # G may be zero: that switches self-gravity off in test harnesses
        if self.G < 0:
            raise ValueError("G must be non-negative")
        for name in ("hbar", "h", "c", "kB", "amu"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not math.isclose(self.h, 2 * math.pi * self.hbar, rel_tol=1e-12):
            raise ValueError("h and hbar are inconsistent")


CODATA = PhysicalConstants()

# Riemann zeta(7)
ZETA7 = 1.0083492773819228268397975


class UnitError(ValueError):
    """Incompatible or unknown unit tags."""


# tag -> (dimension, factor to SI)
_UNITS: dict[str, tuple[str, float]] = {
    "kg": ("mass", 1.0),
    "g": ("mass", 1e-3),
    "amu": ("mass", CODATA.amu),
    "u": ("mass", CODATA.amu),
    "m": ("length", 1.0),
    "cm": ("length", 1e-2),
    "mm": ("length", 1e-3),
    "um": ("length", 1e-6),
    "nm": ("length", 1e-9),
    "pm": ("length", 1e-12),
    "A": ("length", 1e-10),
    "kg/m3": ("density", 1.0),
    "g/cm3": ("density", 1e3),
    "rad/s": ("frequency", 1.0),
    "Hz": ("frequency", 2 * math.pi),
    "kHz": ("frequency", 2e3 * math.pi),
    "mHz": ("frequency", 2e-3 * math.pi),
    "K": ("temperature", 1.0),
    "mK": ("temperature", 1e-3),
    "m2": ("area", 1.0),
    "A2": ("area", 1e-20),
    "pm2": ("area", 1e-24),
}


def unit_tags() -> list[str]:
    return list(_UNITS)


def to_si(value: float, unit: str) -> tuple[float, str]:
    """Convert to SI, returning (value, dimension)."""
    try:
        dim, factor = _UNITS[unit]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}; known: {', '.join(_UNITS)}") from None
    return value * factor, dim


def convert_units(value: float, from_unit: str, to_unit: str) -> float:
    """Convert ``value`` between dimensionally compatible unit tags.

    Hz <-> rad/s carries the 2 pi factor (ordinary to angular frequency).

    >>> convert_units(22.57, "g/cm3", "kg/m3")
    22570.0
    """
    si, dim = to_si(value, from_unit)
    target_dim, factor = _UNITS.get(to_unit, (None, None))
    if target_dim is None:
        raise UnitError(f"unknown unit {to_unit!r}; known: {', '.join(_UNITS)}")
    if target_dim != dim:
        raise UnitError(f"cannot convert {dim} ({from_unit}) to {target_dim} ({to_unit})")
    return si / factor
