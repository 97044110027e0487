"""Thermal master equation for the qubit and its link to the GAD parameters.

The Kraus map with p = p_from_temperature(bath) and r = r_from_time(bath, t)
equals the master-equation flow for time t. The integrator here is an
independent route used to cross-check that equivalence.
"""
import math
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import expm

from src.models.channel import BathSpec, GadChannel
from src.models.state import QubitState
from src.utils.errors import ParameterOutOfRangeError, StepSizeInvalidError
from utils.logger import setup_logger

logger = setup_logger(__name__)

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|


def mean_occupation(bath: BathSpec) -> float:
    """Bose occupation 1/(exp(omega/T) - 1); zero at T = 0."""
    if bath.temperature == 0:
        return 0.0
    x = bath.omega_s / bath.temperature
    return math.exp(-x) / -math.expm1(-x)


def p_from_temperature(bath: BathSpec) -> float:
    if bath.temperature == 0:
        return 1.0
    return 1.0 / (1.0 + math.exp(-bath.omega_s / bath.temperature))


def r_from_time(bath: BathSpec, t: float) -> float:
    if t < 0:
        raise ParameterOutOfRangeError(f"Interaction time must be non-negative, got {t}")
    rate = (2.0 * mean_occupation(bath) + 1.0) * bath.gamma0
    return -math.expm1(-rate * t)


def channel_from_bath(bath: BathSpec, t: float) -> GadChannel:
    return GadChannel(p=p_from_temperature(bath), r=r_from_time(bath, t))


def _rates(bath: BathSpec) -> Tuple[float, float]:
    n = mean_occupation(bath)
    return bath.gamma0 * (n + 1.0), bath.gamma0 * n


def _dissipator(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    jump_dag = jump.conj().T
    number = jump_dag @ jump
    return jump @ rho @ jump_dag - 0.5 * (number @ rho + rho @ number)


def _rhs(rho: np.ndarray, emission: float, absorption: float) -> np.ndarray:
    return emission * _dissipator(SIGMA_MINUS, rho) + absorption * _dissipator(SIGMA_PLUS, rho)


def lindblad_derivative(bath: BathSpec, state: QubitState) -> np.ndarray:
    """d rho/dt = g0 (n+1) D[sigma-] rho + g0 n D[sigma+] rho."""
    emission, absorption = _rates(bath)
    return _rhs(state.elements, emission, absorption)


def default_step(bath: BathSpec) -> float:
    return 1e-3 / (bath.gamma0 * (2.0 * mean_occupation(bath) + 1.0))


def evolve_master_equation(bath: BathSpec, initial: QubitState, t: float,
                           dt: Optional[float] = None) -> QubitState:
    """Fixed-step classical Runge-Kutta integration up to time t.

    The step count is ceil(t/dt); the step is shrunk to land exactly on t.
    """
    if t < 0:
        raise StepSizeInvalidError(f"Interaction time must be non-negative, got {t}")
    if t == 0:
        return initial
    if dt is None:
        dt = min(default_step(bath), t)
    if not (0 < dt <= t):
        raise StepSizeInvalidError(f"Step size must satisfy 0 < dt <= t, got dt={dt}, t={t}")

    steps = max(1, math.ceil(t / dt - 1e-9))
    h = t / steps
    emission, absorption = _rates(bath)
    rho = np.array(initial.elements, dtype=complex)
    for _ in range(steps):
        k1 = h * _rhs(rho, emission, absorption)
        k2 = h * _rhs(rho + k1 / 2, emission, absorption)
        k3 = h * _rhs(rho + k2 / 2, emission, absorption)
        k4 = h * _rhs(rho + k3, emission, absorption)
        rho = rho + (k1 + 2 * k2 + 2 * k3 + k4) / 6
    logger.debug(f"Integrated master equation to t={t} in {steps} steps (h={h:.3e})")
    return QubitState(0.5 * (rho + rho.conj().T))


def liouvillian(bath: BathSpec) -> np.ndarray:
    """4x4 generator acting on the row-major vectorisation of rho."""
    eye = np.eye(2, dtype=complex)
    generator = np.zeros((4, 4), dtype=complex)
    for rate, jump in zip(_rates(bath), (SIGMA_MINUS, SIGMA_PLUS)):
        number = jump.conj().T @ jump
        generator += rate * (np.kron(jump, jump.conj())
                             - 0.5 * np.kron(number, eye)
                             - 0.5 * np.kron(eye, number.T))
    return generator


def evolve_exact(bath: BathSpec, initial: QubitState, t: float) -> QubitState:
    """Propagate with the matrix exponential of the Liouvillian."""
    if t < 0:
        raise StepSizeInvalidError(f"Interaction time must be non-negative, got {t}")
    rho = expm(liouvillian(bath) * t) @ initial.elements.reshape(4)
    rho = rho.reshape(2, 2)
    return QubitState(0.5 * (rho + rho.conj().T))
