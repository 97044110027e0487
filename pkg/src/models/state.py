"""Single-qubit density matrices.

Basis convention: index 0 is the ground state |H>, index 1 the excited
state |V>.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from config import Config
from src.utils.errors import (NegativeEigenvalueError, NotHermitianError,
                              ShapeError, TraceDeviationError)

KET_H = np.array([1.0, 0.0], dtype=complex)
KET_V = np.array([0.0, 1.0], dtype=complex)
KET_D = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_R = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class QubitState:
    """Immutable 2x2 density matrix.

    The constructor only checks the shape; use ``from_matrix`` (or
    ``validate``) when the physical invariants must be enforced.
    """
    elements: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.elements, dtype=complex)
        if matrix.shape != (2, 2):
            raise ShapeError(f"Expected a 2x2 matrix, got shape {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, 'elements', matrix)

    @classmethod
    def from_matrix(cls, matrix) -> 'QubitState':
        """Build a state and enforce Hermiticity, unit trace and positivity."""
        state = cls(matrix)
        validate(state)
        return state

    @classmethod
    def diagonal(cls, ground: float, excited: float) -> 'QubitState':
        return cls(np.diag([ground, excited]))

    @classmethod
    def pure(cls, ket: Sequence[complex]) -> 'QubitState':
        vector = np.asarray(ket, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(np.outer(vector, vector.conj()))

    @classmethod
    def from_bloch(cls, vector: Sequence[float]) -> 'QubitState':
        x, y, z = (float(v) for v in vector)
        return cls(0.5 * (IDENTITY + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z))

    @classmethod
    def maximally_mixed(cls) -> 'QubitState':
        return cls(IDENTITY / 2.0)

    @property
    def populations(self) -> Tuple[float, float]:
        return float(self.elements[0, 0].real), float(self.elements[1, 1].real)

    @property
    def coherence_element(self) -> complex:
        """The off-diagonal element rho_01."""
        return complex(self.elements[0, 1])

    @property
    def bloch_vector(self) -> np.ndarray:
        rho01 = self.elements[0, 1]
        return np.array([
            2.0 * rho01.real,
            -2.0 * rho01.imag,
            (self.elements[0, 0] - self.elements[1, 1]).real,
        ])

    @property
    def is_diagonal(self) -> bool:
        return self.elements[0, 1] == 0 and self.elements[1, 0] == 0

    def allclose(self, other: 'QubitState', atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.elements, other.elements, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        rows = ', '.join(
            '[' + ', '.join(f'{v.real:.6g}{v.imag:+.6g}j' for v in row) + ']'
            for row in self.elements
        )
        return f'QubitState([{rows}])'


def validate(state, tol: Optional[float] = None) -> None:
    """Check the three density-matrix invariants.

    Accepts a QubitState or any 2x2 array. Raises the subclass of
    StateValidationError naming the first violated invariant; the
    exception's ``magnitude`` holds the measured violation.
    """
    tol = Config.VALIDATION_TOL if tol is None else tol
    matrix = state.elements if isinstance(state, QubitState) else np.asarray(state, dtype=complex)
    if matrix.shape != (2, 2):
        raise ShapeError(f"Expected a 2x2 matrix, got shape {matrix.shape}")

    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
    if asymmetry > tol:
        raise NotHermitianError(f"Matrix is not Hermitian (max deviation {asymmetry:.3e})",
                                magnitude=asymmetry)

    deviation = abs(complex(np.trace(matrix)) - 1.0)
    if deviation > tol:
        raise TraceDeviationError(f"Trace deviates from 1 by {deviation:.3e}",
                                  magnitude=deviation)

    smallest = float(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))[0])
    if smallest < -tol:
        raise NegativeEigenvalueError(f"Matrix has negative eigenvalue {smallest:.6g}",
                                      magnitude=smallest)


GROUND = QubitState.pure(KET_H)
EXCITED = QubitState.pure(KET_V)
PLUS_D = QubitState.pure(KET_D)
PLUS_R = QubitState.pure(KET_R)
MAXIMALLY_MIXED = QubitState.maximally_mixed()
