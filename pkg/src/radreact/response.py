"""Driven accelerated oscillator: frequency-domain response and a
reduced-order time-domain integrator.

The third-order equation of motion

    x'' + omega0^2 x - gamma (x''' - (a/c)^2 x') = (e/m) E(t)

admits runaway solutions. The time-domain path instead integrates the
reduced-order form obtained by replacing x''' with -omega0^2 x' + (e/m) E',

    x'' + gamma (omega0^2 + a^2/c^2) x' + omega0^2 x = (e/m) (E + gamma E'),

which agrees with the full equation to first order in gamma.

Complex amplitudes use the e^{-i omega t} convention: a real signal is
``Re[X e^{-i omega t}]``.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .constants import OscillatorParams
from .errors import DomainError, PreconditionError, ResolutionError

__all__ = [
    "DriveSpec",
    "TrajectoryRecord",
    "denominator",
    "denominator_dimensionless",
    "steady_amplitude",
    "reduced_steady_amplitude",
    "integrate_time_domain",
    "RESOLUTION_LIMIT",
    "SETTLING_DAMPING_TIMES",
]

#: Largest admissible ``dt * omega0``.
RESOLUTION_LIMIT = 0.05
#: Damping times that must elapse before a steady state is fitted.
SETTLING_DAMPING_TIMES = 10.0


@dataclass(frozen=True)
class DriveSpec:
    """Monochromatic field E(t) = amplitude cos(omega_drive t + phase)."""

    amplitude: float
    omega_drive: float
    phase: float = 0.0

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise DomainError(f"drive amplitude must be >= 0, got {self.amplitude!r}")
        if not self.omega_drive > 0:
            raise DomainError(f"omega_drive must be > 0, got {self.omega_drive!r}")

    def field(self, t):
        return self.amplitude * np.cos(self.omega_drive * t + self.phase)

    def field_rate(self, t):
        return -self.amplitude * self.omega_drive * np.sin(self.omega_drive * t + self.phase)

    @property
    def complex_amplitude(self):
        """Phasor with E(t) = Re[E_c e^{-i omega t}]."""
        return self.amplitude * cmath.exp(-1j * self.phase)


def denominator(omega, params: OscillatorParams) -> complex:
    """(omega^2 - omega0^2) + i gamma (omega^3 + a^2 omega / c^2)."""
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    a_over_c = params.accel / params.constants.c
    return complex(omega**2 - params.omega0**2,
                   params.gamma * (omega**3 + a_over_c**2 * omega))


def denominator_dimensionless(u, s, g) -> complex:
    """(u^2 - 1) + i g u (u^2 + s^2); equals denominator / omega0^2."""
    return complex(u * u - 1.0, g * u * (u * u + s * s))


def steady_amplitude(drive: DriveSpec, params: OscillatorParams) -> complex:
    """Steady-state phasor of the full third-order equation, in cm."""
    e_over_m = params.constants.e / params.constants.m
    return -e_over_m * drive.complex_amplitude / denominator(drive.omega_drive, params)


def reduced_steady_amplitude(drive: DriveSpec, params: OscillatorParams) -> complex:
    """Steady-state phasor of the reduced-order equation.

    Differs from :func:`steady_amplitude` by a relative O(g) phase and
    O(g^2) modulus at resonance.
    """
    e_over_m = params.constants.e / params.constants.m
    w = drive.omega_drive
    lhs = params.omega0**2 - w * w - 1j * w * params.damping_rate
    return e_over_m * (1.0 - 1j * w * params.gamma) * drive.complex_amplitude / lhs


@dataclass(frozen=True)
class TrajectoryRecord:
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    damping_time: float = math.inf

    def __post_init__(self):
        n = len(self.times)
        if len(self.positions) != n or len(self.velocities) != n:
            raise DomainError("times, positions and velocities must have equal length")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise DomainError("times must be strictly increasing")

    def steady_state_amplitude(self, omega, fraction=0.2) -> complex:
        """Fit A cos(omega t) + B sin(omega t) to the trailing ``fraction``
        of the record and return the phasor ``A + iB``.

        The record must span at least ``SETTLING_DAMPING_TIMES`` amplitude
        damping times.
        """
        span = self.times[-1] - self.times[0]
        if span < SETTLING_DAMPING_TIMES * self.damping_time:
            raise PreconditionError(
                f"record spans {span:.4g} s but steady-state extraction needs "
                f"{SETTLING_DAMPING_TIMES:g} damping times "
                f"({SETTLING_DAMPING_TIMES * self.damping_time:.4g} s)")
        start = int(len(self.times) * (1.0 - fraction))
        t = self.times[start:]
        x = self.positions[start:]
        design = np.column_stack([np.cos(omega * t), np.sin(omega * t)])
        (a, b), *_ = np.linalg.lstsq(design, x, rcond=None)
        return complex(a, b)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "x", "v"])
        for row in zip(self.times, self.positions, self.velocities):
            writer.writerow([format(float(v), ".17g") for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, damping_time=math.inf):
        rows = list(csv.reader(io.StringIO(text)))
        if rows[0] != ["t", "x", "v"]:
            raise DomainError(f"unexpected header {rows[0]!r}")
        data = np.array(rows[1:], dtype=float).reshape(-1, 3)
        return cls(data[:, 0], data[:, 1], data[:, 2], damping_time)


def integrate_time_domain(drive: DriveSpec, params: OscillatorParams, duration, dt,
                          x0=0.0, v0=0.0, require_steady_state=False) -> TrajectoryRecord:
    """Classical RK4 on the reduced-order equation from ``(x0, v0)``.

    Raises :class:`~radreact.errors.ResolutionError` if
    ``dt * omega0 >= RESOLUTION_LIMIT``. With ``require_steady_state`` the
    duration must cover ``SETTLING_DAMPING_TIMES`` damping times
    ``2 / (gamma (omega0^2 + a^2/c^2))``.
    """
    if not dt > 0 or not duration > 0:
        raise DomainError("dt and duration must be > 0")
    if dt * params.omega0 >= RESOLUTION_LIMIT:
        raise ResolutionError(
            f"dt = {dt:.4g} s too coarse: need dt < {RESOLUTION_LIMIT}/omega0 "
            f"= {RESOLUTION_LIMIT / params.omega0:.4g} s")
    rate = params.damping_rate
    damping_time = 2.0 / rate
    if require_steady_state and duration < SETTLING_DAMPING_TIMES * damping_time:
        raise PreconditionError(
            f"duration {duration:.4g} s shorter than {SETTLING_DAMPING_TIMES:g} "
            f"damping times ({SETTLING_DAMPING_TIMES * damping_time:.4g} s)")

    steps = int(math.ceil(duration / dt - 1e-9))
    times = np.arange(steps + 1) * dt
    # Forcing (e/m)(E + gamma E') is needed at t_n, t_n + dt/2 and t_n + dt.
    e_over_m = params.constants.e / params.constants.m
    half_times = np.arange(2 * steps + 1) * (0.5 * dt)
    forcing = (e_over_m * (drive.field(half_times) + params.gamma * drive.field_rate(half_times))).tolist()
    w2 = params.omega0**2

    xs = np.empty(steps + 1)
    vs = np.empty(steps + 1)
    x, v = float(x0), float(v0)
    xs[0], vs[0] = x, v
    h = float(dt)
    h2 = 0.5 * h
    for n in range(steps):
        f0 = forcing[2 * n]
        f1 = forcing[2 * n + 1]
        f2 = forcing[2 * n + 2]
        k1x = v
        k1v = f0 - rate * v - w2 * x
        xa = x + h2 * k1x
        va = v + h2 * k1v
        k2x = va
        k2v = f1 - rate * va - w2 * xa
        xb = x + h2 * k2x
        vb = v + h2 * k2v
        k3x = vb
        k3v = f1 - rate * vb - w2 * xb
        xc = x + h * k3x
        vc = v + h * k3v
        k4x = vc
        k4v = f2 - rate * vc - w2 * xc
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        xs[n + 1] = x
        vs[n + 1] = v
    return TrajectoryRecord(times=times, positions=xs, velocities=vs,
                            damping_time=damping_time)
