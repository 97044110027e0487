import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict

NAN = float('nan')


@dataclass(frozen=True)
class GridPoint:
    """One (p, alpha, r) point of a sweep plus everything needed to evaluate it alone."""
    index: int
    p: float
    alpha: float
    coherence_initial: float
    r: float
    shots: int
    n_bootstrap: int
    seed: int


@dataclass(frozen=True)
class SweepRow:
    """Analytic and tomography-simulated entropy budget at one grid point, in nats.

    ``sigma_coh`` is the difference-protocol value (sigma_total - sigma_pop);
    ``sigma_coh_direct`` is C(rho) - C(rho'). Quantities that could not be
    formed (infinity minus infinity) are NaN and ``indeterminate`` is set.
    """
    p: float
    r: float
    alpha_deg: float
    coherence_initial: float
    sigma_total: float = NAN
    sigma_pop: float = NAN
    sigma_coh: float = NAN
    sigma_coh_direct: float = NAN
    sigma_total_tomo: float = NAN
    sigma_total_tomo_err: float = NAN
    sigma_pop_tomo: float = NAN
    sigma_pop_tomo_err: float = NAN
    sigma_coh_tomo: float = NAN
    sigma_coh_tomo_err: float = NAN
    seed_used: int = 0
    indeterminate: bool = False

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def as_record(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def additivity_gap(self) -> float:
        """|sigma_total - sigma_pop - sigma_coh_direct|, NaN when any term is not finite."""
        terms = (self.sigma_total, self.sigma_pop, self.sigma_coh_direct)
        if not all(math.isfinite(t) for t in terms):
            return NAN
        return abs(self.sigma_total - self.sigma_pop - self.sigma_coh_direct)
