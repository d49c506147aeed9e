"""Physical constants in Gaussian-cgs units and the dimensionless
oscillator parameterization ``s = a/(omega0 c)``, ``g = gamma omega0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy import constants as _si

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CGS",
    "OscillatorParams",
    "damping_time",
    "classical_radius",
    "make_params",
]

# SI -> Gaussian-cgs. The charge conversion is q_esu = q_C * c[m/s] * 10.
_E_ESU = _si.e * _si.c * 10.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Electron-scale constants, Gaussian-cgs.

    e [esu], m [g], c [cm/s], hbar [erg s], kB [erg/K]. Defaults are
    CODATA 2018.
    """

    e: float = _E_ESU
    m: float = _si.m_e * 1e3
    c: float = _si.c * 1e2
    hbar: float = _si.hbar * 1e7
    kB: float = _si.k * 1e7

    def __post_init__(self):
        for name in ("e", "m", "c", "hbar", "kB"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    @property
    def gamma(self) -> float:
        """Radiation damping time 2e^2/(3 m c^3) in seconds."""
        return damping_time(self)

    @property
    def r0(self) -> float:
        """Classical electron radius e^2/(m c^2) in cm."""
        return classical_radius(self)


CGS = PhysicalConstants()


def damping_time(constants: PhysicalConstants = CGS) -> float:
    """Return gamma = 2 e^2 / (3 m c^3) = 2 r0 / (3c)."""
    return 2.0 * constants.e**2 / (3.0 * constants.m * constants.c**3)


def classical_radius(constants: PhysicalConstants = CGS) -> float:
    return constants.e**2 / (constants.m * constants.c**2)


@dataclass(frozen=True)
class OscillatorParams:
    """Dimensional oscillator parameters with derived ``s`` and ``g``.

    ``s`` and ``g`` are properties recomputed from the stored fields, so
    they can never drift out of sync with ``omega0``, ``accel`` and
    ``gamma``.
    """

    omega0: float
    accel: float
    gamma: float
    constants: PhysicalConstants = field(default=CGS, repr=False)

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be > 0, got {self.omega0!r}")
        if not self.accel >= 0:
            raise DomainError(f"accel must be >= 0, got {self.accel!r}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be > 0, got {self.gamma!r}")

    @property
    def s(self) -> float:
        return self.accel / (self.omega0 * self.constants.c)

    @property
    def g(self) -> float:
        return self.gamma * self.omega0

    @property
    def damping_rate(self) -> float:
        """Velocity damping coefficient gamma (omega0^2 + a^2/c^2) [1/s]."""
        return self.gamma * (self.omega0**2 + (self.accel / self.constants.c) ** 2)

    @classmethod
    def from_dimensionless(cls, s, g, omega0=1.0, constants=CGS):
        """Build parameters with a prescribed ``(s, g)`` at given ``omega0``.

        The damping time is ``g/omega0`` rather than the electron value, which
        is what the time-domain checks need to probe arbitrary ``g``.
        """
        if not s >= 0:
            raise DomainError(f"s must be >= 0, got {s!r}")
        if not g > 0:
            raise DomainError(f"g must be > 0, got {g!r}")
        if not omega0 > 0:
            raise DomainError(f"omega0 must be > 0, got {omega0!r}")
        return cls(omega0=omega0, accel=s * omega0 * constants.c,
                   gamma=g / omega0, constants=constants)


def make_params(omega0, accel, constants: PhysicalConstants = CGS) -> OscillatorParams:
    """Electron oscillator at resonance ``omega0`` under acceleration ``accel``."""
    if not omega0 > 0:
        raise DomainError(f"omega0 must be > 0, got {omega0!r}")
    if not accel >= 0:
        raise DomainError(f"accel must be >= 0, got {accel!r}")
    return OscillatorParams(omega0=float(omega0), accel=float(accel),
                            gamma=damping_time(constants), constants=constants)
