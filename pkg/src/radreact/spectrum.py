"""Vacuum plus Unruh-thermal spectral density seen by the accelerated dipole."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CGS, PhysicalConstants
from .errors import DomainError

__all__ = [
    "SpectralPoint",
    "coth_factor",
    "planck_excess",
    "unruh_temperature",
    "unruh_acceleration",
    "free_space_energy_density",
    "spectral_density",
]

# Regime boundaries for coth(pi/s).
_SMALL_S = 1e-3
_LARGE_S = 1e3


def planck_excess(x):
    """Return coth(x) - 1 = 2/(e^{2x} - 1) for x > 0 without overflow."""
    if x > 350.0:
        # e^{-2x} < 1e-304; the denominator correction is below one ulp.
        return 2.0 * math.exp(-2.0 * x)
    return 2.0 / math.expm1(2.0 * x)


def coth_factor(s) -> float:
    """Thermal enhancement coth(pi/s) of the accelerated-frame spectrum.

    ``s = a/(omega0 c)``. At ``s = 0`` the limit 1 is returned exactly.
    """
    s = float(s)
    if not s >= 0:
        raise DomainError(f"s must be >= 0, got {s!r}")
    if s == 0.0:
        return 1.0
    x = math.pi / s
    if s > _LARGE_S:
        x2 = x * x
        return 1.0 / x + x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0)))
    if s < _SMALL_S:
        return 1.0 + planck_excess(x)
    return 1.0 / math.tanh(x)


def unruh_temperature(accel, constants: PhysicalConstants = CGS) -> float:
    """T = hbar a / (2 pi c kB), in kelvin."""
    if not accel >= 0:
        raise DomainError(f"accel must be >= 0, got {accel!r}")
    return constants.hbar * accel / (2.0 * math.pi * constants.c * constants.kB)


def unruh_acceleration(temperature, constants: PhysicalConstants = CGS) -> float:
    """Inverse of :func:`unruh_temperature`."""
    if not temperature >= 0:
        raise DomainError(f"temperature must be >= 0, got {temperature!r}")
    return 2.0 * math.pi * constants.c * constants.kB * temperature / constants.hbar


def free_space_energy_density(omega, constants: PhysicalConstants = CGS) -> float:
    """rho(omega) = hbar omega^3 / (2 pi^2 c^2).

    Kept with the c^2 denominator as printed alongside the accelerated
    spectrum; with it, (8 pi^2/3c) rho reproduces 4 hbar omega^3 / 3c^3
    exactly. A true spectral energy density would carry c^3.
    """
    return constants.hbar * omega**3 / (2.0 * math.pi**2 * constants.c**2)


@dataclass(frozen=True)
class SpectralPoint:
    omega: float
    density: float
    vacuum_part: float
    thermal_part: float


def spectral_density(omega, accel, constants: PhysicalConstants = CGS) -> SpectralPoint:
    """Field spectrum <eps eps*> at ``omega`` for proper acceleration ``accel``.

    density = (4 hbar omega^3 / 3 c^3) [1 + (a/c omega)^2] coth(pi c omega / a)

    ``vacuum_part`` keeps the acceleration correction but sets coth to 1;
    ``thermal_part`` is the Planck excess, so the parts add to ``density``.
    """
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    if not accel >= 0:
        raise DomainError(f"accel must be >= 0, got {accel!r}")
    c = constants.c
    correction = 1.0 + (accel / (c * omega)) ** 2
    vacuum = 4.0 * constants.hbar * omega**3 / (3.0 * c**3) * correction
    if accel == 0:
        thermal = 0.0
    else:
        thermal = vacuum * planck_excess(math.pi * c * omega / accel)
    return SpectralPoint(omega=float(omega), density=vacuum + thermal,
                         vacuum_part=vacuum, thermal_part=thermal)
