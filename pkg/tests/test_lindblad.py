import math

import numpy as np
import pytest

from src.channel.gad import apply, equilibrium_state
from src.channel.lindblad import (channel_from_bath, default_step, evolve_exact,
                                  evolve_master_equation, lindblad_derivative, liouvillian,
                                  mean_occupation, p_from_temperature, r_from_time)
from src.core.measures import random_state
from src.models.channel import BathSpec, GadChannel
from src.models.state import EXCITED, PLUS_D
from src.utils.errors import ParameterOutOfRangeError, StepSizeInvalidError

LN9_BATH = BathSpec(omega_s=math.log(9.0), temperature=1.0, gamma0=1.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(5))


def test_bath_validation():
    """Test that unphysical bath parameters are rejected."""
    with pytest.raises(ParameterOutOfRangeError):
        BathSpec(omega_s=-1.0, temperature=1.0, gamma0=1.0)
    with pytest.raises(ParameterOutOfRangeError):
        BathSpec(omega_s=1.0, temperature=-0.1, gamma0=1.0)
    with pytest.raises(ParameterOutOfRangeError):
        BathSpec(omega_s=1.0, temperature=1.0, gamma0=0.0)


def test_mean_occupation_and_p():
    """Test the thermal relations at omega/T = ln 9."""
    assert mean_occupation(LN9_BATH) == pytest.approx(0.125)
    assert p_from_temperature(LN9_BATH) == pytest.approx(0.9)


def test_temperature_limits():
    """Test zero and very high temperature."""
    cold = BathSpec(omega_s=1.0, temperature=0.0, gamma0=1.0)
    hot = BathSpec(omega_s=1.0, temperature=1e9, gamma0=1.0)
    assert mean_occupation(cold) == 0.0
    assert p_from_temperature(cold) == 1.0
    assert p_from_temperature(hot) == pytest.approx(0.5, abs=1e-8)


def test_for_occupation_round_trip():
    """Test that a bath built from n_bar reports the same n_bar."""
    for n_bar in (0.0, 0.125, 1.0, 3.5):
        assert mean_occupation(BathSpec.for_occupation(n_bar)) == pytest.approx(n_bar)


def test_r_from_time():
    """Test the damping strength as a function of time."""
    assert r_from_time(LN9_BATH, 0.0) == 0.0
    assert r_from_time(LN9_BATH, 1.0) == pytest.approx(1.0 - math.exp(-1.25))
    assert r_from_time(LN9_BATH, 1.0) == pytest.approx(0.713495, abs=1e-6)
    assert r_from_time(LN9_BATH, 1e3) == pytest.approx(1.0)
    with pytest.raises(ParameterOutOfRangeError):
        r_from_time(LN9_BATH, -1.0)


def test_channel_from_bath():
    """Test that the bath maps onto the matching channel."""
    ch = channel_from_bath(LN9_BATH, 1.0)
    assert ch.p == pytest.approx(0.9)
    assert ch.r == pytest.approx(0.713495, abs=1e-6)


def test_derivative_vanishes_at_equilibrium():
    """Test stationarity of the matched equilibrium state."""
    eq = equilibrium_state(GadChannel(p_from_temperature(LN9_BATH), 0.0))
    np.testing.assert_allclose(lindblad_derivative(LN9_BATH, eq), np.zeros((2, 2)), atol=1e-12)


def test_derivative_spontaneous_emission():
    """Test the excited-state decay rate at zero temperature."""
    bath = BathSpec.for_occupation(0.0)
    derivative = lindblad_derivative(bath, EXCITED)
    assert derivative[1, 1].real == pytest.approx(-1.0)
    assert derivative[0, 0].real == pytest.approx(1.0)


def test_derivative_is_traceless(rng):
    """Test trace preservation of the generator."""
    for _ in range(20):
        assert abs(np.trace(lindblad_derivative(LN9_BATH, random_state(rng)))) < 1e-12


def test_evolution_at_zero_time_returns_initial():
    """Test the t=0 shortcut."""
    assert evolve_master_equation(LN9_BATH, PLUS_D, 0.0).allclose(PLUS_D)


def test_rk4_matches_kraus_example():
    """Test |D><D| at n_bar=0.125, t=1 against the Kraus map."""
    evolved = evolve_master_equation(LN9_BATH, PLUS_D, 1.0)
    kraus = apply(GadChannel(0.9, 1.0 - math.exp(-1.25)), PLUS_D)
    np.testing.assert_allclose(evolved.elements, kraus.elements, atol=1e-6)


@pytest.mark.parametrize('n_bar', [0.0, 0.125, 1.0])
@pytest.mark.parametrize('t', [0.1, 0.5, 1.0, 2.0])
def test_master_equation_matches_kraus(n_bar, t):
    """Test the RK4 and matrix-exponential propagators against the Kraus map."""
    bath = BathSpec.for_occupation(n_bar)
    initial = PLUS_D
    kraus = apply(channel_from_bath(bath, t), initial)
    np.testing.assert_allclose(evolve_master_equation(bath, initial, t).elements,
                               kraus.elements, atol=1e-6)
    np.testing.assert_allclose(evolve_exact(bath, initial, t).elements, kraus.elements, atol=1e-10)


def test_equilibrium_unchanged_by_integration():
    """Test the fixed point of the integrator."""
    eq = equilibrium_state(GadChannel(0.9, 0.0))
    assert evolve_master_equation(LN9_BATH, eq, 1.0).allclose(eq, atol=1e-9)


def test_invalid_step_sizes():
    """Test the step-size preconditions."""
    with pytest.raises(StepSizeInvalidError):
        evolve_master_equation(LN9_BATH, PLUS_D, 1.0, dt=0.0)
    with pytest.raises(StepSizeInvalidError):
        evolve_master_equation(LN9_BATH, PLUS_D, 1.0, dt=2.0)
    with pytest.raises(StepSizeInvalidError):
        evolve_master_equation(LN9_BATH, PLUS_D, -1.0)


def test_explicit_step_lands_on_final_time():
    """Test that a step that does not divide t still reaches t."""
    evolved = evolve_master_equation(LN9_BATH, PLUS_D, 1.0, dt=0.003)
    kraus = apply(channel_from_bath(LN9_BATH, 1.0), PLUS_D)
    np.testing.assert_allclose(evolved.elements, kraus.elements, atol=1e-6)


def test_default_step():
    """Test the default step scales with the relaxation rate."""
    assert default_step(LN9_BATH) == pytest.approx(1e-3 / 1.25)


def test_liouvillian_preserves_trace():
    """Test that the generator annihilates the trace functional."""
    trace_row = np.array([1.0, 0.0, 0.0, 1.0])
    np.testing.assert_allclose(trace_row @ liouvillian(LN9_BATH), np.zeros(4), atol=1e-12)
