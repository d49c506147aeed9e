"""Proper-time worldlines and the Lorentz-Abraham-Dirac self-force.

Metric signature is (+, -, -, -), so a timelike four-velocity has
u.u = +c^2 and a proper acceleration of magnitude a has A.A = -a^2.
Four-vectors are contravariant components ``(ct, x, y, z)``.

The self-force bracket evaluated here, per unit mass, is

    gamma * (x'''^nu + (x''.x'') x'^nu / c^2)

split into the Schott term ``gamma x'''`` and the relativistic drag
``gamma (x''.x'') x' / c^2``. On a hyperbolic worldline the two cancel
exactly. Analytic worldlines can be evaluated in extended precision
(mpmath) so that the cancellation is not swamped by the rounding of
cosh/sinh at large rapidity.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np

from .constants import CGS, PhysicalConstants
from .errors import DomainError, ResolutionError

__all__ = [
    "Worldline",
    "LadDecomposition",
    "DerivativeEstimate",
    "minkowski_dot",
    "central_derivative",
    "hyperbolic_worldline",
    "inertial_worldline",
    "circular_worldline",
    "finite_difference_worldline",
    "lad_self_force",
    "larmor_power",
    "pr_drag_force",
    "lorentz_nonrel_residual",
    "ResidualRecord",
    "samples_to_csv",
]

_METRIC = (1, -1, -1, -1)


def minkowski_dot(p, q):
    """p.q with signature (+, -, -, -); works for floats and mpmath numbers."""
    return p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3]


# Fourth-order central stencils: (offsets, weights, derivative order).
_STENCILS = {
    1: ((-2, -1, 1, 2), (1.0, -8.0, 8.0, -1.0), 12.0),
    2: ((-2, -1, 0, 1, 2), (-1.0, 16.0, -30.0, 16.0, -1.0), 12.0),
    3: ((-3, -2, -1, 1, 2, 3), (1.0, -8.0, 13.0, -13.0, 8.0, -1.0), 8.0),
}


@dataclass(frozen=True)
class DerivativeEstimate:
    value: np.ndarray
    error: np.ndarray


def _stencil(position, tau, h, order):
    offsets, weights, norm = _STENCILS[order]
    acc = 0.0
    for k, w in zip(offsets, weights):
        acc = acc + w * np.asarray(position(tau + k * h), dtype=float)
    return acc / (norm * h**order)


def central_derivative(position, tau, h, order) -> DerivativeEstimate:
    """Fourth-order central difference of ``position`` at ``tau``.

    The error estimate is the Richardson difference between steps h and 2h,
    divided by 2^4 - 1.
    """
    if order not in _STENCILS:
        raise DomainError(f"derivative order must be 1, 2 or 3, got {order!r}")
    fine = _stencil(position, tau, h, order)
    coarse = _stencil(position, tau, 2.0 * h, order)
    return DerivativeEstimate(value=fine, error=np.abs(fine - coarse) / 15.0)


@dataclass(frozen=True)
class Worldline:
    """Four-position x(tau) and its proper-time derivatives.

    Missing derivative callables are replaced by fourth-order central
    differences with step ``h``.
    """

    position: Callable
    velocity: Optional[Callable] = None
    acceleration: Optional[Callable] = None
    jerk: Optional[Callable] = None
    h: Optional[float] = None

    def derivative(self, tau, order):
        fn = (self.position, self.velocity, self.acceleration, self.jerk)[order]
        if fn is not None:
            return fn(tau)
        if self.h is None:
            raise DomainError(f"no derivative of order {order} and no step h given")
        return central_derivative(self.position, tau, self.h, order).value

    def four_velocity(self, tau):
        return self.derivative(tau, 1)

    def four_acceleration(self, tau):
        return self.derivative(tau, 2)

    def four_jerk(self, tau):
        return self.derivative(tau, 3)


def hyperbolic_worldline(a, constants: PhysicalConstants = CGS, dps: Optional[int] = 50) -> Worldline:
    """Uniform proper acceleration ``a`` along z, at rest at tau = 0.

    ct = (c^2/a) sinh(a tau/c), z = (c^2/a) cosh(a tau/c). With ``dps`` set,
    components are mpmath numbers at that many digits; ``dps=None`` gives
    float64 numpy arrays.
    """
    if not a > 0:
        raise DomainError(f"acceleration must be > 0, got {a!r}")
    if dps is None:
        c = constants.c
        a = float(a)
        sinh, cosh = np.sinh, np.cosh
        vec = lambda *xs: np.array(xs, dtype=float)  # noqa: E731
        zero = 0.0
    else:
        ctx = mpmath.mp.clone()
        ctx.dps = dps
        c = ctx.mpf(constants.c)
        a = ctx.mpf(a)
        sinh, cosh = ctx.sinh, ctx.cosh
        vec = lambda *xs: tuple(xs)  # noqa: E731
        zero = ctx.mpf(0)

    def rapidity(tau):
        return a * (tau if dps is None else ctx.mpf(tau)) / c

    def position(tau):
        eta = rapidity(tau)
        return vec(c * c / a * sinh(eta), zero, zero, c * c / a * cosh(eta))

    def velocity(tau):
        eta = rapidity(tau)
        return vec(c * cosh(eta), zero, zero, c * sinh(eta))

    def acceleration(tau):
        eta = rapidity(tau)
        return vec(a * sinh(eta), zero, zero, a * cosh(eta))

    def jerk(tau):
        eta = rapidity(tau)
        return vec(a * a / c * cosh(eta), zero, zero, a * a / c * sinh(eta))

    return Worldline(position, velocity, acceleration, jerk)


def inertial_worldline(beta: Sequence[float], constants: PhysicalConstants = CGS) -> Worldline:
    """Straight worldline through the origin with three-velocity ``beta c``."""
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (3,) or not float(beta @ beta) < 1:
        raise DomainError("beta must be a 3-vector with |beta| < 1")
    lorentz = 1.0 / math.sqrt(1.0 - float(beta @ beta))
    u = constants.c * lorentz * np.concatenate([[1.0], beta])
    zero = np.zeros(4)
    return Worldline(lambda tau: u * tau, lambda tau: u.copy(),
                     lambda tau: zero.copy(), lambda tau: zero.copy())


def circular_worldline(beta, radius, constants: PhysicalConstants = CGS) -> Worldline:
    """Uniform circular motion in the x-y plane at speed ``beta c``."""
    if not 0 < beta < 1:
        raise DomainError(f"need 0 < beta < 1, got {beta!r}")
    if not radius > 0:
        raise DomainError(f"radius must be > 0, got {radius!r}")
    c = constants.c
    lorentz = 1.0 / math.sqrt(1.0 - beta * beta)
    # Angular rate per unit proper time.
    w = lorentz * beta * c / radius

    def position(tau):
        return np.array([c * lorentz * tau, radius * math.cos(w * tau),
                         radius * math.sin(w * tau), 0.0])

    def velocity(tau):
        return np.array([c * lorentz, -radius * w * math.sin(w * tau),
                         radius * w * math.cos(w * tau), 0.0])

    def acceleration(tau):
        return np.array([0.0, -radius * w * w * math.cos(w * tau),
                         -radius * w * w * math.sin(w * tau), 0.0])

    def jerk(tau):
        return np.array([0.0, radius * w**3 * math.sin(w * tau),
                         -radius * w**3 * math.cos(w * tau), 0.0])

    return Worldline(position, velocity, acceleration, jerk)


def finite_difference_worldline(position: Callable, h: float) -> Worldline:
    """Worldline whose derivatives all come from central differences."""
    if not h > 0:
        raise DomainError(f"step h must be > 0, got {h!r}")
    return Worldline(position, h=h)


@dataclass(frozen=True)
class LadDecomposition:
    """Self-force bracket per unit mass, contravariant components."""

    schott: np.ndarray
    drag: np.ndarray
    total_self: np.ndarray


def lad_self_force(w: Worldline, tau, gamma, constants: PhysicalConstants = CGS) -> LadDecomposition:
    """Schott and drag parts of gamma (x''' + (x''.x'') x'/c^2) at ``tau``.

    The sum is formed in the worldline's own arithmetic (extended precision
    for mpmath worldlines) before conversion to float64.
    """
    try:
        u = w.four_velocity(tau)
        acc = w.four_acceleration(tau)
        jerk = w.four_jerk(tau)
    except Exception as exc:
        raise ArithmeticError(f"derivative evaluation failed at tau = {tau!r}: {exc}") from exc
    a2 = minkowski_dot(acc, acc)
    if hasattr(a2, "context"):
        ctx = a2.context
        gam = ctx.mpf(gamma)
        c2 = ctx.mpf(constants.c) ** 2
    else:
        gam = gamma
        c2 = constants.c**2
    schott = [gam * j for j in jerk]
    drag = [gam * a2 * ui / c2 for ui in u]
    total = [sj + dj for sj, dj in zip(schott, drag)]
    as_float = lambda xs: np.array([float(x) for x in xs])  # noqa: E731
    return LadDecomposition(schott=as_float(schott), drag=as_float(drag),
                            total_self=as_float(total))


def larmor_power(a, constants: PhysicalConstants = CGS) -> float:
    """R = 2 e^2 a^2 / (3 c^3), erg/s."""
    if not a >= 0:
        raise DomainError(f"acceleration must be >= 0, got {a!r}")
    return 2.0 * constants.e**2 * a * a / (3.0 * constants.c**3)


def pr_drag_force(v, radiated_power, constants: PhysicalConstants = CGS):
    """Poynting-Robertson drag -R v / c^2 in dyn; ``v`` scalar or 3-vector."""
    speed = float(np.linalg.norm(np.atleast_1d(v)))
    if not speed < constants.c:
        raise DomainError(f"|v| must be < c, got {speed!r}")
    if not radiated_power >= 0:
        raise DomainError(f"radiated power must be >= 0, got {radiated_power!r}")
    out = -radiated_power * np.asarray(v, dtype=float) / constants.c**2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ResidualRecord:
    times: np.ndarray
    residual: np.ndarray
    drive_term: np.ndarray

    @property
    def max_relative(self):
        scale = np.max(np.abs(self.drive_term))
        peak = np.max(np.abs(self.residual))
        return peak / scale if scale > 0 else peak


def lorentz_nonrel_residual(times, positions, gamma, field, e_over_m=None,
                            omega0=0.0, constants: PhysicalConstants = CGS,
                            resolution_tol=0.1) -> ResidualRecord:
    """Pointwise residual of x'' + omega0^2 x - gamma x''' - (e/m) E.

    With ``omega0 = 0`` this is the free-electron Lorentz equation; a
    non-zero ``omega0`` gives the a = 0 bound oscillator. Derivatives use
    fourth-order central stencils on the uniform grid, so three points are
    lost at each end. If the third derivative changes by more than
    ``resolution_tol`` (relative) between steps h and 2h the grid is
    rejected with :class:`~radreact.errors.ResolutionError`.
    """
    t = np.asarray(times, dtype=float)
    x = np.asarray(positions, dtype=float)
    e_field = np.asarray(field, dtype=float)
    if not (t.shape == x.shape == e_field.shape):
        raise DomainError("times, positions and field must have equal length")
    if t.size < 13:
        raise ResolutionError("need at least 13 grid points")
    h = t[1] - t[0]
    if not np.allclose(np.diff(t), h, rtol=1e-9, atol=0):
        raise DomainError("grid must be uniform")
    if e_over_m is None:
        e_over_m = constants.e / constants.m

    def deriv(step, order, lo, hi):
        offsets, weights, norm = _STENCILS[order]
        acc = np.zeros(hi - lo)
        for k, wgt in zip(offsets, weights):
            acc += wgt * x[lo + k * step:hi + k * step]
        return acc / (norm * (step * h) ** order)

    n = t.size
    lo, hi = 3, n - 3
    acc2 = deriv(1, 2, lo, hi)
    jerk = deriv(1, 3, lo, hi)
    jerk_coarse = deriv(2, 3, 6, n - 6)
    scale = np.max(np.abs(jerk))
    if scale > 0:
        diff = np.max(np.abs(jerk[3:-3] - jerk_coarse))
        if diff > resolution_tol * scale:
            raise ResolutionError(
                f"grid too coarse: third derivative changes by {diff / scale:.3g} "
                f"(relative) between h and 2h")
    drive = e_over_m * e_field[lo:hi]
    residual = acc2 + omega0**2 * x[lo:hi] - gamma * jerk - drive
    return ResidualRecord(times=t[lo:hi], residual=residual, drive_term=drive)


def samples_to_csv(w: Worldline, taus) -> str:
    """CSV with header ``tau,ct,x,y,z,u0,u1,u2,u3``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tau", "ct", "x", "y", "z", "u0", "u1", "u2", "u3"])
    for tau in taus:
        pos = [float(v) for v in w.position(tau)]
        vel = [float(v) for v in w.four_velocity(tau)]
        writer.writerow([format(float(v), ".17g") for v in [tau, *pos, *vel]])
    return buf.getvalue()
