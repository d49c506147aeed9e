import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from radreact.constants import CGS, OscillatorParams, make_params
from radreact.errors import DomainError, PreconditionError, ResolutionError
from radreact.response import (
    DriveSpec,
    TrajectoryRecord,
    denominator,
    denominator_dimensionless,
    integrate_time_domain,
    reduced_steady_amplitude,
    steady_amplitude,
)

E_OVER_M = CGS.e / CGS.m


def dimless(s, g):
    return OscillatorParams.from_dimensionless(s, g)


# -- denominator -------------------------------------------------------------

def test_denominator_at_resonance():
    assert denominator_dimensionless(1.0, 1.0, 1e-3) == pytest.approx(2e-3j)


def test_denominator_undamped_is_real():
    assert denominator_dimensionless(3.0, 0.0, 0.0) == 8.0


def test_denominator_example():
    assert denominator_dimensionless(2.0, 1.0, 1e-3) == pytest.approx(3 + 1e-2j, rel=1e-15)


@given(u=st.floats(1e-3, 1e3), s=st.floats(0, 100), g=st.floats(1e-9, 0.5))
def test_denominator_dissipative_and_conjugate(u, s, g):
    d = denominator_dimensionless(u, s, g)
    assert d.imag > 0
    # The mirror amplitude carries e^{+i omega t}, i.e. u -> -u.
    assert complex(u * u - 1, -g * u * (u * u + s * s)) == d.conjugate()


@given(omega0=st.floats(1e10, 1e18), s=st.floats(0, 10), u=st.floats(0.1, 10))
def test_dimensional_and_dimensionless_agree(omega0, s, u):
    p = make_params(omega0, s * omega0 * CGS.c)
    d = denominator(u * omega0, p) / omega0**2
    ref = denominator_dimensionless(u, p.s, p.g)
    assert d.real == pytest.approx(ref.real, rel=1e-12, abs=1e-12)
    assert d.imag == pytest.approx(ref.imag, rel=1e-12)


def test_denominator_rejects_nonpositive_omega():
    with pytest.raises(DomainError):
        denominator(0.0, dimless(0, 1e-3))


# -- steady amplitudes -------------------------------------------------------

def test_steady_amplitude_zero_drive():
    assert steady_amplitude(DriveSpec(0.0, 1.0), dimless(1, 1e-3)) == 0


@pytest.mark.parametrize("s", [0.0, 1.0, 3.0])
def test_steady_amplitude_at_resonance(s):
    p = dimless(s, 1e-3)
    x = steady_amplitude(DriveSpec(2.0, 1.0), p)
    assert abs(x) == pytest.approx(E_OVER_M * 2.0 / (p.gamma * (1 + s * s)), rel=1e-14)


def test_steady_amplitude_undamped_limit():
    p = dimless(0, 1e-12)
    x = steady_amplitude(DriveSpec(1.0, 3.0), p)
    assert abs(x) == pytest.approx(E_OVER_M / 8.0, rel=1e-10)


def test_reduced_amplitude_matches_full_at_resonance_to_second_order():
    for g in (1e-2, 1e-3):
        p = dimless(1.0, g)
        d = DriveSpec(1.0, 1.0)
        ratio = abs(reduced_steady_amplitude(d, p)) / abs(steady_amplitude(d, p))
        assert ratio == pytest.approx(math.sqrt(1 + g * g), rel=1e-12)


def test_drive_validation():
    with pytest.raises(DomainError):
        DriveSpec(-1.0, 1.0)
    with pytest.raises(DomainError):
        DriveSpec(1.0, 0.0)


# -- time domain -------------------------------------------------------------

def test_zero_drive_from_rest_stays_zero():
    r = integrate_time_domain(DriveSpec(0.0, 1.0), dimless(0, 1e-2), 50.0, 0.01)
    assert not np.any(r.positions) and not np.any(r.velocities)


def test_resolution_guard():
    with pytest.raises(ResolutionError):
        integrate_time_domain(DriveSpec(1.0, 1.0), dimless(0, 1e-2), 10.0, 0.05)


def test_settling_guard():
    p = dimless(0, 1e-2)
    with pytest.raises(PreconditionError):
        integrate_time_domain(DriveSpec(1.0, 1.0), p, 100.0, 0.01, require_steady_state=True)
    r = integrate_time_domain(DriveSpec(1.0, 1.0), p, 100.0, 0.01)
    with pytest.raises(PreconditionError):
        r.steady_state_amplitude(1.0)


def test_resonant_fit_matches_frequency_domain():
    p = dimless(0.0, 1e-2)
    d = DriveSpec(1e-12, 1.0)
    r = integrate_time_domain(d, p, 2500.0, 0.02, require_steady_state=True)
    fitted = r.steady_state_amplitude(1.0)
    assert abs(fitted) == pytest.approx(abs(steady_amplitude(d, p)), rel=1e-3)


def test_undriven_decay_rate():
    p = dimless(1.0, 1e-2)
    r = integrate_time_domain(DriveSpec(0.0, 1.0), p, 400.0, 0.01, x0=1.0)
    x = r.positions
    peaks = np.flatnonzero((x[1:-1] > x[:-2]) & (x[1:-1] > x[2:])) + 1
    slope = np.polyfit(r.times[peaks], np.log(x[peaks]), 1)[0]
    assert -slope == pytest.approx(p.damping_rate / 2, rel=1e-2)


def test_energy_balance():
    p = dimless(1.0, 1e-2)
    d = DriveSpec(1e-12, 1.0)
    x = reduced_steady_amplitude(d, p)
    dt = 0.01
    r = integrate_time_domain(d, p, 200 * math.pi, dt, x0=x.real, v0=x.imag)
    n = int(round(2 * math.pi / dt)) * 20
    t, v = r.times[-n:], r.velocities[-n:]
    force = E_OVER_M * (d.field(t) + p.gamma * d.field_rate(t))
    supplied = np.mean(force * v)
    dissipated = p.damping_rate * np.mean(v * v)
    assert supplied == pytest.approx(dissipated, rel=1e-2)


def test_time_step_convergence_order():
    # Start on the analytic steady state so only discretization error remains.
    p = dimless(0.0, 1e-2)
    d = DriveSpec(1e-12, 1.0)
    exact = reduced_steady_amplitude(d, p)
    errors = []
    for dt in (0.04, 0.02, 0.01):
        r = integrate_time_domain(d, p, 2000.0, dt, x0=exact.real, v0=exact.imag)
        errors.append(abs(r.steady_state_amplitude(1.0) - exact) / abs(exact))
    orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    assert min(orders) >= 3.8


def test_phase_convention():
    p = dimless(0.0, 1e-2)
    base = steady_amplitude(DriveSpec(1.0, 0.7), p)
    shifted = steady_amplitude(DriveSpec(1.0, 0.7, phase=0.3), p)
    assert shifted == pytest.approx(base * np.exp(-0.3j), rel=1e-14)


# -- CSV ---------------------------------------------------------------------

def test_csv_round_trip():
    r = integrate_time_domain(DriveSpec(1.0, 1.3, 0.2), dimless(0.5, 1e-2), 5.0, 0.01)
    text = r.to_csv()
    assert text.splitlines()[0] == "t,x,v"
    back = TrajectoryRecord.from_csv(text)
    np.testing.assert_array_equal(back.times, r.times)
    np.testing.assert_array_equal(back.positions, r.positions)
    np.testing.assert_array_equal(back.velocities, r.velocities)


def test_record_validation():
    with pytest.raises(DomainError):
        TrajectoryRecord(np.array([0.0, 1.0]), np.zeros(2), np.zeros(3))
    with pytest.raises(DomainError):
        TrajectoryRecord(np.array([1.0, 0.0]), np.zeros(2), np.zeros(2))
