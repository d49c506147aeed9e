"""Radiation reaction and the [x, p] commutator of a uniformly accelerated
charged oscillator."""

from .constants import CGS, OscillatorParams, PhysicalConstants, damping_time, make_params
from .spectrum import coth_factor, spectral_density, unruh_temperature
from .commutator import (FullAxis, PaperHalfResonance, SymmetricResonance,
                         commutator_closed_form, commutator_numeric,
                         uncertainty_product, variance_p, variance_x)

__version__ = "0.1.0"

__all__ = [
    "CGS",
    "OscillatorParams",
    "PhysicalConstants",
    "damping_time",
    "make_params",
    "coth_factor",
    "spectral_density",
    "unruh_temperature",
    "PaperHalfResonance",
    "SymmetricResonance",
    "FullAxis",
    "commutator_closed_form",
    "commutator_numeric",
    "variance_x",
    "variance_p",
    "uncertainty_product",
]
