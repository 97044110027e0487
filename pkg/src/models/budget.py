import math
from dataclasses import dataclass
from typing import Optional

from config import Config
from src.utils.errors import ConsistencyError


def _floored(name: str, value: float, tol: float) -> float:
    if value < -tol:
        raise ConsistencyError(f"{name} entropy production {value:.3e} is negative")
    return max(value, 0.0)


@dataclass(frozen=True)
class EntropyBudget:
    """Total entropy production and its population / coherence split, in nats."""
    total: float
    population: float
    coherence: float

    @classmethod
    def checked(cls, total: float, population: float, coherence: float,
                tol: Optional[float] = None) -> 'EntropyBudget':
        """Clamp floating-point negatives to zero and verify additivity."""
        tol = Config.BUDGET_TOL if tol is None else tol
        total = _floored('Total', total, tol)
        population = _floored('Population', population, tol)
        coherence = _floored('Coherence', coherence, tol)
        if math.isfinite(total) and math.isfinite(population):
            gap = abs(total - population - coherence)
            if gap > tol:
                raise ConsistencyError(f"Budget is not additive (gap {gap:.3e})")
        elif math.isinf(total) != math.isinf(population):
            raise ConsistencyError("Only one of total and population production diverges")
        return cls(total=total, population=population, coherence=coherence)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.total)

    def as_tuple(self):
        return self.total, self.population, self.coherence
