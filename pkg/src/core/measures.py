"""Entropies, coherence quantifiers and distances for single-qubit states.

All logarithms are natural (results in nats).
"""
import math
from typing import Tuple

import numpy as np

from config import Config
from src.models.state import QubitState
from src.utils.errors import ConsistencyError, NegativeEigenvalueError


def _eigenvalues(state: QubitState) -> np.ndarray:
    """Eigenvalues in ascending order, floating-point negatives clamped to 0."""
    values = np.linalg.eigvalsh(state.elements)
    if values[0] < -Config.VALIDATION_TOL:
        raise NegativeEigenvalueError(
            f"State has negative eigenvalue {values[0]:.6g}", magnitude=float(values[0]))
    return np.clip(values, 0.0, None)


def _entropy_of(values) -> float:
    return float(-sum(v * math.log(v) for v in values if v > 0.0))


def binary_entropy(x: float) -> float:
    """Shannon entropy of the distribution (x, 1 - x) in nats."""
    return _entropy_of((x, 1.0 - x))


def closed_form_eigenvalues(state: QubitState) -> Tuple[float, float]:
    """lambda = 1/2 -/+ sqrt((dpop/2)^2 + |c|^2), ascending."""
    ground, excited = state.populations
    radius = math.sqrt(((ground - excited) / 2.0) ** 2 + abs(state.coherence_element) ** 2)
    return 0.5 - radius, 0.5 + radius


def von_neumann_entropy(state: QubitState) -> float:
    return _entropy_of(_eigenvalues(state))


def relative_entropy(rho: QubitState, sigma: QubitState) -> float:
    """D(rho||sigma) = tr(rho ln rho - rho ln sigma).

    Returns ``math.inf`` when the support of rho is not contained in the
    support of sigma.
    """
    tol = Config.VALIDATION_TOL
    weights, vectors = np.linalg.eigh(sigma.elements)
    cross = 0.0
    for weight, vector in zip(weights, vectors.T):
        overlap = float(np.real(vector.conj() @ rho.elements @ vector))
        if weight <= tol:
            if overlap > tol:
                return math.inf
            continue
        cross += overlap * math.log(weight)
    value = -von_neumann_entropy(rho) - cross
    if -tol < value < 0.0:
        value = 0.0
    return value


def dephase(state: QubitState) -> QubitState:
    """Remove every coherence in the energy eigenbasis."""
    ground, excited = state.populations
    return QubitState.diagonal(ground, excited)


def l1_coherence(state: QubitState) -> float:
    return 2.0 * abs(state.coherence_element)


def dephasing_entropy_gain(state: QubitState) -> float:
    """S(dephase(rho)) - S(rho) with no clamping; negative only through round-off."""
    return von_neumann_entropy(dephase(state)) - von_neumann_entropy(state)


def rel_entropy_coherence(state: QubitState) -> float:
    """
    Relative entropy of coherence C(rho) = S(dephase(rho)) - S(rho).

    Round-off negatives within Config.BUDGET_TOL are returned as 0.

    Raises:
        ConsistencyError: If the entropy gain is negative beyond that tolerance
    """
    value = dephasing_entropy_gain(state)
    if value < -Config.BUDGET_TOL:
        raise ConsistencyError(f"Dephasing lowered the entropy by {-value:.3e} nats")
    return max(value, 0.0)


def fidelity(rho: QubitState, sigma: QubitState) -> float:
    """Uhlmann fidelity, using F = tr(rho sigma) + 2 sqrt(det rho det sigma) for qubits."""
    overlap = float(np.real(np.trace(rho.elements @ sigma.elements)))
    det_rho = max(float(np.real(np.linalg.det(rho.elements))), 0.0)
    det_sigma = max(float(np.real(np.linalg.det(sigma.elements))), 0.0)
    value = overlap + 2.0 * math.sqrt(det_rho * det_sigma)
    return min(max(value, 0.0), 1.0)


def trace_distance(rho: QubitState, sigma: QubitState) -> float:
    """Half the trace norm of the difference; for qubits half the Bloch distance."""
    return 0.5 * float(np.linalg.norm(rho.bloch_vector - sigma.bloch_vector))


def purity(state: QubitState) -> float:
    return float(np.real(np.trace(state.elements @ state.elements)))


def random_state(rng: np.random.Generator) -> QubitState:
    """Draw a state uniformly from the Bloch ball."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = rng.random() ** (1.0 / 3.0)
    return QubitState.from_bloch(radius * direction)
