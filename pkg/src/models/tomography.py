from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from config import Config
from src.models.state import QubitState
from src.utils.errors import ParameterOutOfRangeError

BASES = ('H', 'V', 'R', 'D')


@dataclass(frozen=True)
class CountRecord:
    """Photon counts for the H, V, R, D projections of one tomography run."""
    counts: Tuple[int, int, int, int]
    shots_per_basis: int
    seed: int
    rng_algorithm: str = Config.RNG_ALGORITHM

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != len(BASES):
            raise ParameterOutOfRangeError(f"Expected {len(BASES)} counts, got {len(counts)}")
        if self.shots_per_basis < 1:
            raise ParameterOutOfRangeError(f"shots_per_basis must be >= 1, got {self.shots_per_basis}")
        for basis, count in zip(BASES, counts):
            if not 0 <= count <= self.shots_per_basis:
                raise ParameterOutOfRangeError(
                    f"{basis} count {count} outside [0, {self.shots_per_basis}]")
        object.__setattr__(self, 'counts', counts)

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.shots_per_basis

    def as_dict(self):
        return {
            'counts': dict(zip(BASES, self.counts)),
            'shots_per_basis': self.shots_per_basis,
            'seed': self.seed,
            'rng_algorithm': self.rng_algorithm,
        }


@dataclass(frozen=True, eq=False)
class Reconstruction:
    """Reconstructed state with parametric-bootstrap standard errors."""
    state: QubitState
    stderr: np.ndarray
    n_bootstrap: int
    record: CountRecord
    samples: Tuple[QubitState, ...] = field(default=(), repr=False)

    @property
    def bloch_stderr(self) -> np.ndarray:
        vectors = np.array([s.bloch_vector for s in self.samples])
        return vectors.std(axis=0, ddof=1)
