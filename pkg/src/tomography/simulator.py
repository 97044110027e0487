"""Finite-shot simulation of four-basis (H, V, R, D) single-qubit tomography.

Each basis is measured with its own batch of ``shots`` photons, modelled as
an independent binomial draw. Reconstruction is linear inversion followed by
radial projection of the Bloch vector onto the unit ball. Error bars come
from a parametric bootstrap: counts are redrawn at the observed frequencies.
"""
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from src.models.state import (IDENTITY, KET_D, KET_H, KET_R, KET_V, SIGMA_X,
                              SIGMA_Y, SIGMA_Z, QubitState)
from src.models.tomography import CountRecord, Reconstruction
from src.utils.errors import (NotHermitianError, ParameterOutOfRangeError,
                              TraceDeviationError)
from utils.logger import setup_logger

logger = setup_logger(__name__)

PROJECTOR_KETS = (KET_H, KET_V, KET_R, KET_D)
_BOOTSTRAP_STREAM = 1


def _generator(seed: int, stream: int = 0) -> np.random.Generator:
    if seed < 0:
        raise ParameterOutOfRangeError(f"Seed must be non-negative, got {seed}")
    if stream == 0:
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))


def projector_probabilities(state: QubitState) -> np.ndarray:
    """(<H|rho|H>, <V|rho|V>, <R|rho|R>, <D|rho|D>)."""
    probs = np.array([np.real(k.conj() @ state.elements @ k) for k in PROJECTOR_KETS])
    return np.clip(probs, 0.0, 1.0)


def simulate_counts(state: QubitState, shots: int, seed: int) -> CountRecord:
    if shots < 1:
        raise ParameterOutOfRangeError(f"shots must be >= 1, got {shots}")
    rng = _generator(seed)
    counts = rng.binomial(shots, projector_probabilities(state))
    return CountRecord(counts=tuple(int(c) for c in counts), shots_per_basis=shots, seed=seed)


def bloch_from_frequencies(freqs) -> np.ndarray:
    """Bloch components (x, y, z) = (2 f_D - 1, 2 f_R - 1, f_H - f_V).

    Works on a single 4-vector or on an (n, 4) array of resampled frequencies.
    """
    f = np.asarray(freqs, dtype=float)
    f_h, f_v, f_r, f_d = f[..., 0], f[..., 1], f[..., 2], f[..., 3]
    return np.stack([2.0 * f_d - 1.0, 2.0 * f_r - 1.0, f_h - f_v], axis=-1)


def _matrix_from_bloch(vector) -> np.ndarray:
    x, y, z = vector
    return 0.5 * (IDENTITY + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def linear_inversion(record: Union[CountRecord, Sequence[float]]) -> np.ndarray:
    """Unit-trace Hermitian estimate; may have a negative eigenvalue.

    Accepts a CountRecord or the four relative frequencies directly.
    """
    freqs = record.frequencies if isinstance(record, CountRecord) else record
    return _matrix_from_bloch(bloch_from_frequencies(freqs))


def _radial_projection(vector: np.ndarray) -> np.ndarray:
    length = np.linalg.norm(vector)
    if length <= 1.0:
        return vector
    return vector / length


def project_to_physical(m) -> QubitState:
    """Nearest valid state (Frobenius norm) for a unit-trace Hermitian 2x2 input."""
    matrix = np.asarray(m, dtype=complex)
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
    if asymmetry > 1e-12:
        raise NotHermitianError(f"Cannot project a non-Hermitian matrix (deviation {asymmetry:.3e})",
                                magnitude=asymmetry)
    deviation = abs(complex(np.trace(matrix)) - 1.0)
    if deviation > 1e-12:
        raise TraceDeviationError(f"Cannot project a matrix with trace deviation {deviation:.3e}",
                                  magnitude=deviation)

    vector = QubitState(matrix).bloch_vector
    projected = _radial_projection(vector)
    if projected is vector:
        return QubitState(matrix)
    logger.debug(f"Projected Bloch vector of length {np.linalg.norm(vector):.6f} onto the sphere")
    return QubitState(_matrix_from_bloch(projected))


def reconstruct_with_errors(state: QubitState, shots: int, seed: int,
                            n_bootstrap: int) -> Reconstruction:
    """Simulate one run, reconstruct, and bootstrap per-element standard errors.

    The count record is the one ``simulate_counts(state, shots, seed)``
    returns; bootstrap resamples use an independent stream derived from
    ``seed``.
    """
    if n_bootstrap < 2:
        raise ParameterOutOfRangeError(f"n_bootstrap must be >= 2, got {n_bootstrap}")
    record = simulate_counts(state, shots, seed)
    estimate = project_to_physical(linear_inversion(record))

    rng = _generator(seed, _BOOTSTRAP_STREAM)
    resampled = rng.binomial(shots, record.frequencies, size=(n_bootstrap, 4)) / shots
    samples = tuple(
        QubitState(_matrix_from_bloch(_radial_projection(v)))
        for v in bloch_from_frequencies(resampled)
    )
    stack = np.array([s.elements for s in samples])
    stderr = stack.std(axis=0, ddof=1)
    return Reconstruction(state=estimate, stderr=stderr, n_bootstrap=n_bootstrap,
                          record=record, samples=samples)


def bootstrap_values(reconstruction: Reconstruction,
                     statistic: Callable[[QubitState], float]) -> np.ndarray:
    """A scalar function of the state evaluated on every bootstrap sample."""
    return np.array([statistic(s) for s in reconstruction.samples], dtype=float)


def bootstrap_statistic(reconstruction: Reconstruction,
                        statistic: Callable[[QubitState], float]) -> Tuple[float, float]:
    """Point value and bootstrap standard error of a scalar function of the state."""
    value = statistic(reconstruction.state)
    return value, float(bootstrap_values(reconstruction, statistic).std(ddof=1))


def derive_seed(seed: int, *key: int) -> int:
    """Independent 64-bit seed for a sub-task identified by ``key``."""
    sequence = np.random.SeedSequence([seed, *key])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
