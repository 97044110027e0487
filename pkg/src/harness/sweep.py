"""Figure-reproduction sweeps over (p, alpha, r).

Every grid point runs the two-experiment protocol:

1. prepare the coherent state, send it through the channel, measure Sigma;
2. prepare the dephased state, send it through the channel, measure Sigma_pop;

and reports Sigma_coh as the difference, next to the direct value
C(rho) - C(rho'). Each point is evaluated analytically and through simulated
tomography of the two evolved states.
"""
import math
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.channel.gad import apply, equilibrium_state
from src.core.measures import relative_entropy
from src.entropy.production import coherence_production, entropy_difference, total_production
from src.harness.sweep_config import SweepConfig
from src.models.budget import EntropyBudget
from src.models.channel import GadChannel
from src.models.preparation import PrepSetting
from src.models.state import QubitState
from src.models.sweep import GridPoint, SweepRow
from src.prep.preparation import prepare
from src.tomography.simulator import (bootstrap_values, derive_seed,
                                      reconstruct_with_errors)
from src.utils.errors import IndeterminateError
from utils.logger import setup_logger

logger = setup_logger(__name__)

DEPHASED_STREAM = 2
ANALYTIC_COLUMNS = ('sigma_total', 'sigma_pop', 'sigma_coh', 'sigma_coh_direct')
TOMOGRAPHY_COLUMNS = ('sigma_total_tomo', 'sigma_pop_tomo', 'sigma_coh_tomo')
GRID_AXES = ('p', 'alpha_deg', 'r')

BOOTSTRAP_PROCEDURE = (
    "Each evolved state is measured in the H, V, R and D bases with an independent "
    "binomial draw of shots_per_basis photons per basis (PCG64). The state is "
    "reconstructed by linear inversion and radial projection of the Bloch vector "
    "onto the unit ball. Error bars are parametric-bootstrap standard deviations "
    "(ddof=1): counts are redrawn n_bootstrap times at the observed frequencies, "
    "each resample is reconstructed the same way, and the entropy quantities are "
    "recomputed on every resample. Sigma_coh resamples pair the two experiments "
    "by resample index. Prepared initial states are taken as known."
)


def grid_points(config: SweepConfig) -> Iterator[GridPoint]:
    """Grid points in (p, alpha, r) order with per-point derived seeds."""
    index = 0
    for p in config.p_values:
        for alpha, coherence in config.settings():
            for r in config.r_grid:
                yield GridPoint(index=index, p=p, alpha=alpha, coherence_initial=coherence,
                                r=r, shots=config.shots, n_bootstrap=config.n_bootstrap,
                                seed=derive_seed(config.seed, index))
                index += 1


def _analytic(coherent: QubitState, dephased: QubitState, ch: GadChannel) -> dict:
    eq = equilibrium_state(ch)
    final = apply(ch, coherent)
    values = {'sigma_coh_direct': coherence_production(coherent, final)}
    try:
        total = total_production(coherent, final, eq)
        population = total_production(dephased, apply(ch, dephased), eq)
    except IndeterminateError as e:
        logger.warning(f"Indeterminate analytic budget at p={ch.p:g}, r={ch.r:g}: {e}")
        values['indeterminate'] = True
        return values

    budget = EntropyBudget.checked(total=total, population=population,
                                   coherence=values['sigma_coh_direct'])
    values.update(sigma_total=budget.total, sigma_pop=budget.population,
                  sigma_coh_direct=budget.coherence)
    try:
        values['sigma_coh'] = entropy_difference(budget.total, budget.population,
                                                 'Coherence entropy production')
    except IndeterminateError as e:
        logger.warning(f"Indeterminate difference protocol at p={ch.p:g}, r={ch.r:g}: {e}")
        values['indeterminate'] = True
    return values


def _production_from(initial: QubitState, eq: QubitState) -> Callable[[QubitState], float]:
    before = relative_entropy(initial, eq)

    def statistic(final: QubitState) -> float:
        return entropy_difference(before, relative_entropy(final, eq), 'Reconstructed entropy production')
    return statistic


def _tomography(point: GridPoint, coherent: QubitState, dephased: QubitState,
                ch: GadChannel) -> dict:
    eq = equilibrium_state(ch)
    total_of = _production_from(coherent, eq)
    population_of = _production_from(dephased, eq)
    try:
        first = reconstruct_with_errors(apply(ch, coherent), point.shots, point.seed,
                                        point.n_bootstrap)
        second = reconstruct_with_errors(apply(ch, dephased), point.shots,
                                         derive_seed(point.seed, DEPHASED_STREAM), point.n_bootstrap)
        total, population = total_of(first.state), population_of(second.state)
        total_samples = bootstrap_values(first, total_of)
        population_samples = bootstrap_values(second, population_of)
    except IndeterminateError as e:
        logger.warning(f"Indeterminate reconstructed budget at p={ch.p:g}, r={ch.r:g}: {e}")
        return {'indeterminate': True}

    coherence_samples = total_samples - population_samples
    return {
        'sigma_total_tomo': total,
        'sigma_total_tomo_err': float(np.std(total_samples, ddof=1)),
        'sigma_pop_tomo': population,
        'sigma_pop_tomo_err': float(np.std(population_samples, ddof=1)),
        'sigma_coh_tomo': total - population,
        'sigma_coh_tomo_err': float(np.std(coherence_samples, ddof=1)),
    }


def evaluate_point(point: GridPoint) -> SweepRow:
    """Analytic and tomography budgets for one grid point."""
    ch = GadChannel(point.p, point.r)
    setting = PrepSetting(point.alpha)
    coherent = prepare(setting)
    dephased = prepare(setting.dephased_copy())

    analytic = _analytic(coherent, dephased, ch)
    tomography = _tomography(point, coherent, dephased, ch)
    analytic_flag = analytic.pop('indeterminate', False)
    tomography_flag = tomography.pop('indeterminate', False)
    indeterminate = analytic_flag or tomography_flag

    row = SweepRow(p=ch.p, r=ch.r, alpha_deg=setting.alpha_degrees,
                   coherence_initial=point.coherence_initial, seed_used=point.seed,
                   indeterminate=indeterminate, **analytic, **tomography)
    logger.debug(f"Row {point.index}: p={row.p:g} alpha={row.alpha_deg:.4f} deg r={row.r:g} "
                 f"sigma={row.sigma_total:.6g} pop={row.sigma_pop:.6g} coh={row.sigma_coh:.6g}")
    return row


def run_sweep(config: SweepConfig,
              progress: Optional[Callable[[int, int], None]] = None) -> List[SweepRow]:
    """
    Evaluate every grid point of a sweep.

    Args:
        config (SweepConfig): Validated sweep configuration
        progress (callable, optional): Called as progress(done, total) after each row

    Returns:
        list: One SweepRow per (p, alpha, r), ordered by p, then alpha, then r
    """
    total = config.grid_size
    logger.info(f"Starting {config.scenario} sweep: {total} grid points, "
                f"{config.shots} shots per basis, {config.n_bootstrap} bootstrap resamples")
    rows = []
    for point in grid_points(config):
        rows.append(evaluate_point(point))
        if progress is not None:
            progress(len(rows), total)

    flagged = sum(1 for row in rows if row.indeterminate)
    if flagged:
        logger.warning(f"{flagged} of {total} rows are indeterminate")
    logger.info(f"Finished {config.scenario} sweep")
    return rows


def max_negativity(rows: List[SweepRow], columns: Sequence[str] = ANALYTIC_COLUMNS) -> float:
    """Largest negative excursion among ``columns`` (0 if none)."""
    worst = 0.0
    for row in rows:
        for value in (getattr(row, c) for c in columns):
            if math.isfinite(value):
                worst = max(worst, -value)
    return worst


def spread(rows: List[SweepRow], column: str, across: str) -> Dict[Tuple[float, float], float]:
    """Max minus min of ``column`` across values of the grid axis ``across``.

    Keyed by the other two grid coordinates, e.g. spread(rows, 'sigma_coh', 'p')
    gives the p-spread of Sigma_coh for every (alpha_deg, r).
    """
    if across not in GRID_AXES:
        raise ValueError(f"Unknown grid axis {across!r}")
    kept = [axis for axis in GRID_AXES if axis != across]
    groups = {}
    for row in rows:
        value = getattr(row, column)
        if math.isfinite(value):
            groups.setdefault(tuple(getattr(row, axis) for axis in kept), []).append(value)
    return {key: max(v) - min(v) for key, v in groups.items()}


def tomography_deviation(rows: List[SweepRow]) -> Dict[str, float]:
    """Largest |analytic - tomography| over the three Sigma columns.

    Also reports that deviation as a multiple of its bootstrap stderr and the
    fraction of comparisons falling within three stderr.
    """
    worst, multiple_at_worst = 0.0, 0.0
    within = compared = 0
    for row in rows:
        for analytic, tomo in zip(ANALYTIC_COLUMNS[:3], TOMOGRAPHY_COLUMNS):
            a, t, err = getattr(row, analytic), getattr(row, tomo), getattr(row, f"{tomo}_err")
            if not (math.isfinite(a) and math.isfinite(t) and math.isfinite(err)):
                continue
            deviation = abs(a - t)
            if err > 0:
                multiple = deviation / err
            else:
                multiple = 0.0 if deviation == 0 else math.inf
            compared += 1
            within += multiple <= 3.0
            if deviation >= worst:
                worst, multiple_at_worst = deviation, multiple
    return {
        'max_abs_deviation': worst,
        'stderr_multiple': multiple_at_worst,
        'fraction_within_3_stderr': within / compared if compared else math.nan,
        'compared': compared,
    }
