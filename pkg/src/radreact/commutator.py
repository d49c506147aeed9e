"""The [x, p] spectral integral, position/momentum variances and the
uncertainty product for the accelerated oscillator.

All quantities are dimensionless functions of ``s = a/(omega0 c)`` and
``g = gamma omega0``. With ``u = omega/omega0`` and ``F(u) = 1 + (s/u)^2``
the three spectral integrands share the form

    (4/pi) g u^k F(u) coth(pi u/s) / [(u^2 - 1)^2 + g^2 u^6 F(u)^2]

with ``k = 4`` for the commutator (units of i hbar), ``k = 3`` for <x^2>
(units of hbar/2m omega0) and ``k = 5`` for <p^2> (units of m hbar omega0/2).

Which part of the frequency axis is integrated is an explicit
:class:`Window`; the choices give materially different answers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, NonConvergenceError
from .quadrature import QuadratureResult, QuadratureSpec, integrate
from .spectrum import coth_factor

__all__ = [
    "PaperHalfResonance",
    "SymmetricResonance",
    "FullAxis",
    "Window",
    "parse_window",
    "CommutatorResult",
    "integrand",
    "spectral_integrand",
    "commutator_closed_form",
    "commutator_numeric",
    "variance_x",
    "variance_p",
    "uncertainty_product",
    "UncertaintyResult",
    "normalized_commutator",
    "G_MAX",
]

#: Largest g accepted by the numeric paths.
G_MAX = 1e-2

_COMMUTATOR_POWER = 4
_X_POWER = 3
_P_POWER = 5


@dataclass(frozen=True)
class PaperHalfResonance:
    """z = omega^2 - omega0^2 from 0 to infinity with every slowly varying
    factor frozen at omega0; the integral then reduces to an arctan."""

    def label(self):
        return "paper"


@dataclass(frozen=True)
class SymmetricResonance:
    """Full integrand over z in [-W, W], i.e. u in [sqrt(1-W), sqrt(1+W)]."""

    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise DomainError(f"half width W must be > 0, got {self.half_width!r}")
        if not self.half_width < 1:
            raise DomainError(f"half width W must be < 1, got {self.half_width!r}")

    def label(self):
        return f"sym:{self.half_width!r}"


@dataclass(frozen=True)
class FullAxis:
    """Full integrand over u in (0, cutoff]."""

    cutoff: float

    def __post_init__(self):
        if not self.cutoff > 1:
            raise DomainError(f"cutoff must be > 1, got {self.cutoff!r}")

    def label(self):
        return f"full:{self.cutoff!r}"


Window = Union[PaperHalfResonance, SymmetricResonance, FullAxis]


def parse_window(text: str) -> Window:
    """Parse ``paper``, ``sym:W`` or ``full:L``."""
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "paper" and not arg:
            return PaperHalfResonance()
        if kind == "sym":
            return SymmetricResonance(float(arg))
        if kind == "full":
            return FullAxis(float(arg))
    except ValueError as exc:
        raise DomainError(f"bad window {text!r}: {exc}") from None
    raise DomainError(f"bad window {text!r}; expected paper, sym:W or full:L")


@dataclass(frozen=True)
class CommutatorResult:
    value: float
    window: Window
    quadrature: Union[QuadratureResult, str]

    @property
    def error_estimate(self):
        return 0.0 if isinstance(self.quadrature, str) else self.quadrature.error_estimate

    @property
    def evaluations(self):
        return 0 if isinstance(self.quadrature, str) else self.quadrature.evaluations


def _check_sg(s, g):
    if not s >= 0:
        raise DomainError(f"s must be >= 0, got {s!r}")
    if not 0 < g <= G_MAX:
        raise DomainError(f"need 0 < g <= {G_MAX}, got {g!r}")


def _coth_pi_u_over_s(u, s):
    if s == 0:
        return np.ones_like(u)
    with np.errstate(over="ignore"):
        # 1 + 2/(e^{2x} - 1); overflow to inf gives the exact limit 1.
        x = np.pi * u / s
        return 1.0 + 2.0 / np.expm1(2.0 * x)


def spectral_integrand(u, s, g, power):
    """Vectorized ``(4/pi) g u^power F coth / [(u^2-1)^2 + g^2 u^6 F^2]``."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise DomainError("u must be > 0")
    f = 1.0 + (s / u) ** 2
    # (u^2 - 1) written as (u - 1)(u + 1) keeps relative accuracy near u = 1.
    detune = (u - 1.0) * (u + 1.0)
    denom = detune**2 + (g * u**3 * f) ** 2
    return (4.0 / np.pi) * g * u**power * f * _coth_pi_u_over_s(u, s) / denom


def integrand(u, s, g):
    """Commutator integrand; its integral over u in (0, inf) is [x,p]/(i hbar)."""
    if not s >= 0:
        raise DomainError(f"s must be >= 0, got {s!r}")
    if not 0 < g < 1:
        raise DomainError(f"need 0 < g < 1, got {g!r}")
    if np.ndim(u) == 0:
        if not u > 0:
            raise DomainError(f"u must be > 0, got {u!r}")
        return float(spectral_integrand(np.array([u]), s, g, _COMMUTATOR_POWER)[0])
    return spectral_integrand(u, s, g, _COMMUTATOR_POWER)


def commutator_closed_form(s) -> float:
    """Narrow-resonance result [x, p] = i hbar coth(pi/s), in units of i hbar."""
    return coth_factor(s)


def normalized_commutator(s, g=None) -> float:
    """Commutator divided by its thermal factor coth(pi/s); identically 1."""
    return commutator_closed_form(s) / coth_factor(s)


def _quad_spec(spec, center, width):
    spec = spec or QuadratureSpec()
    return QuadratureSpec(rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                          max_depth=spec.max_depth, peak_center=center,
                          peak_width=width, max_evaluations=spec.max_evaluations)


def _finish(value, window, quad):
    if not quad.converged:
        raise NonConvergenceError(
            f"quadrature did not converge for window {window.label()}",
            quad.error_estimate)
    return CommutatorResult(value=value, window=window, quadrature=quad)


def _windowed(s, g, window, spec, power):
    _check_sg(s, g)
    if isinstance(window, PaperHalfResonance):
        amp = g * (1.0 + s * s)
        quad = integrate(lambda z: (2.0 / math.pi) * amp / (z * z + amp * amp),
                         0.0, math.inf, _quad_spec(spec, 0.0, amp))
        thermal = coth_factor(s)
        scaled = QuadratureResult(value=quad.value * thermal,
                                  error_estimate=quad.error_estimate * thermal,
                                  evaluations=quad.evaluations,
                                  converged=quad.converged)
        return _finish(scaled.value, window, scaled)
    if isinstance(window, SymmetricResonance):
        lo = math.sqrt(1.0 - window.half_width)
        hi = math.sqrt(1.0 + window.half_width)
    elif isinstance(window, FullAxis):
        lo, hi = 0.0, float(window.cutoff)
    else:
        raise DomainError(f"unknown window {window!r}")
    width = 0.5 * g * (1.0 + s * s)

    # Integrate in the offset d = u - 1 so that abscissae near the
    # resonance keep full relative precision.
    def f(d):
        d = np.asarray(d, dtype=float)
        out = np.zeros_like(d)
        pos = d > -1.0
        out[pos] = _offset_integrand(d[pos], s, g, power)
        return out

    quad = integrate(f, lo - 1.0, hi - 1.0, _quad_spec(spec, 0.0, width))
    return _finish(quad.value, window, quad)


def _offset_integrand(d, s, g, power):
    u = 1.0 + d
    f = 1.0 + (s / u) ** 2
    detune = d * (2.0 + d)
    denom = detune**2 + (g * u**3 * f) ** 2
    return (4.0 / np.pi) * g * u**power * f * _coth_pi_u_over_s(u, s) / denom


def commutator_numeric(s, g, window: Window, spec: QuadratureSpec = None) -> CommutatorResult:
    """[x, p]/(i hbar) evaluated by quadrature under ``window``.

    Under :class:`PaperHalfResonance` the frozen Lorentzian
    ``(2/pi) A/(z^2 + A^2)``, ``A = g (1 + s^2)``, is integrated over
    ``z >= 0`` and multiplied by coth(pi/s). The other windows integrate the
    unfrozen integrand with peak hints at ``u = 1``.

    Raises :class:`~radreact.errors.NonConvergenceError` when the
    quadrature misses its tolerance.
    """
    return _windowed(s, g, window, spec, _COMMUTATOR_POWER)


def variance_x(s, g, window: Window, spec: QuadratureSpec = None) -> CommutatorResult:
    """<x^2> in units of hbar/(2 m omega0)."""
    return _windowed(s, g, window, spec, _X_POWER)


def variance_p(s, g, window: Window, spec: QuadratureSpec = None) -> CommutatorResult:
    """<p^2> in units of m hbar omega0 / 2."""
    return _windowed(s, g, window, spec, _P_POWER)


@dataclass(frozen=True)
class UncertaintyResult:
    dx2: CommutatorResult
    dp2: CommutatorResult

    @property
    def product(self):
        """Delta x Delta p in units of hbar/2."""
        return math.sqrt(self.dx2.value * self.dp2.value)


def uncertainty_product(s, g, window: Window, spec: QuadratureSpec = None) -> UncertaintyResult:
    """Both variances and their geometric mean under one window."""
    return UncertaintyResult(dx2=variance_x(s, g, window, spec),
                             dp2=variance_p(s, g, window, spec))
