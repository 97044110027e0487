"""Self-check of every numerical invariant of the toolkit.

Each check evaluates one invariant on a documented grid or on random inputs
drawn from a generator seeded with the suite's master seed, and reports the
worst violation it saw against its tolerance.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from config import Config
from src.channel.gad import apply, completeness_deviation, compose, equilibrium_state
from src.channel.lindblad import channel_from_bath, evolve_exact, evolve_master_equation
from src.core.measures import (closed_form_eigenvalues, dephase, dephasing_entropy_gain,
                               fidelity, l1_coherence, random_state, rel_entropy_coherence,
                               relative_entropy, trace_distance, von_neumann_entropy)
from src.entropy.production import (budget, coherence_production, population_production,
                                    total_production)
from src.harness.sweep import run_sweep
from src.harness.sweep_config import SweepConfig
from src.models.channel import BathSpec, GadChannel
from src.models.preparation import ALPHA_MAX, PrepSetting
from src.models.state import MAXIMALLY_MIXED, PLUS_D, QubitState, validate
from src.prep.preparation import (alpha_for_coherence, evolved_closed_form, prepare,
                                  prepare_with_waveplates)
from src.reporting.report_generator import csv_text
from src.tomography.simulator import (derive_seed, linear_inversion, project_to_physical,
                                      projector_probabilities, reconstruct_with_errors,
                                      simulate_counts)
from utils.logger import setup_logger

logger = setup_logger(__name__)

GRID_11 = np.linspace(0.0, 1.0, 11)
P_GRID_11 = np.linspace(0.5, 1.0, 11)
ALPHA_GRID_9 = np.linspace(0.0, ALPHA_MAX, 9)
R_GRID_21 = np.linspace(0.0, 1.0, 21)
OCCUPATIONS = (0.0, 0.125, 1.0)
TIMES = (0.1, 0.5, 1.0, 2.0)
ANCHOR = (1.203973, 0.510826, 0.693147)
STATISTICS_SEEDS = 1000
STATISTICS_SHOTS = 10_000
CALIBRATION_SEEDS = 20
CALIBRATION_BOOTSTRAP = 200
FIDELITY_SEEDS = 20
FIDELITY_SHOTS = 100_000
FIG_SETS = tuple((p, c) for p in Config.SCENARIOS['fig2']['p_values']
                 for c in Config.SCENARIOS['fig2']['alpha_values']) + \
           tuple((p, c) for p in Config.SCENARIOS['fig3']['p_values']
                 for c in Config.SCENARIOS['fig3']['alpha_values'])


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ''

    def line(self) -> str:
        verdict = 'PASS' if self.passed else 'FAIL'
        return f"[{verdict}] {self.name}: worst={self.worst:.3e} (tol {self.tolerance:.1e}) {self.detail}".rstrip()


@dataclass
class PropertyReport:
    seed: int
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[PropertyResult]:
        return [r for r in self.results if not r.passed]

    def as_text(self) -> str:
        lines = [f"Property suite (master seed {self.seed})"]
        lines.extend(r.line() for r in self.results)
        lines.append(f"{len(self.results) - len(self.failures)}/{len(self.results)} passed")
        return '\n'.join(lines)


def _result(name: str, worst: float, tolerance: float, detail: str = '') -> PropertyResult:
    return PropertyResult(name=name, passed=bool(worst <= tolerance), worst=float(worst),
                          tolerance=tolerance, detail=detail)


def _random_triple(rng: np.random.Generator) -> Tuple[float, float, float]:
    """(alpha, p, r) with p < 1 so every relative entropy is finite."""
    return rng.uniform(0.0, ALPHA_MAX), rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0)


def check_kraus_completeness(rng) -> PropertyResult:
    worst = max(completeness_deviation(GadChannel(p, r)) for p in P_GRID_11 for r in GRID_11)
    return _result('kraus_completeness', worst, 1e-12, '11x11 (p, r) grid')


def check_fixed_point(rng) -> PropertyResult:
    worst = 0.0
    for p in P_GRID_11:
        for r in GRID_11:
            ch = GadChannel(p, r)
            eq = equilibrium_state(ch)
            worst = max(worst, float(np.max(np.abs(apply(ch, eq).elements - eq.elements))))
    return _result('equilibrium_fixed_point', worst, 1e-12, '11x11 (p, r) grid')


def check_output_is_state(rng) -> PropertyResult:
    failures = 0
    for _ in range(200):
        ch = GadChannel(rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0))
        try:
            validate(apply(ch, random_state(rng)))
        except ValueError:
            failures += 1
    return _result('channel_output_valid', failures, 0, '200 random (rho, p, r)')


def check_closed_form(rng) -> PropertyResult:
    worst = 0.0
    for alpha in ALPHA_GRID_9:
        setting = PrepSetting(alpha)
        initial = prepare(setting)
        for p in P_GRID_11:
            for r in GRID_11:
                ch = GadChannel(p, r)
                diff = apply(ch, initial).elements - evolved_closed_form(setting, ch).elements
                worst = max(worst, float(np.max(np.abs(diff))))
    return _result('closed_form_evolution', worst, 1e-12, '9x11x11 (alpha, p, r) grid')


def check_coherence_decay_independent_of_p(rng) -> PropertyResult:
    worst = 0.0
    for alpha in ALPHA_GRID_9:
        initial = prepare(PrepSetting(alpha))
        for r in GRID_11:
            values = [apply(GadChannel(p, r), initial).coherence_element for p in P_GRID_11]
            worst = max(worst, max(abs(v - values[0]) for v in values))
    return _result('coherence_decay_p_independent', worst, 1e-12)


def check_lindblad_equivalence(rng) -> PropertyResult:
    initial = random_state(rng)
    worst_rk4 = worst_exact = 0.0
    for n_bar in OCCUPATIONS:
        bath = BathSpec.for_occupation(n_bar)
        for t in TIMES:
            kraus = apply(channel_from_bath(bath, t), initial).elements
            worst_rk4 = max(worst_rk4, float(np.max(np.abs(
                evolve_master_equation(bath, initial, t).elements - kraus))))
            worst_exact = max(worst_exact, float(np.max(np.abs(
                evolve_exact(bath, initial, t).elements - kraus))))
    return _result('lindblad_kraus_equivalence', max(worst_rk4, worst_exact), 1e-6,
                   f"rk4 {worst_rk4:.2e}, expm {worst_exact:.2e}")


def check_semigroup(rng) -> PropertyResult:
    worst = 0.0
    for _ in range(200):
        p = rng.uniform(0.5, 1.0)
        first, second = GadChannel(p, rng.uniform()), GadChannel(p, rng.uniform())
        state = random_state(rng)
        twice = apply(second, apply(first, state))
        once = apply(compose(first, second), state)
        worst = max(worst, float(np.max(np.abs(twice.elements - once.elements))))
    return _result('semigroup_composition', worst, 1e-12, '200 random (p, r1, r2, rho)')


def check_decomposition(rng) -> PropertyResult:
    worst_gap = worst_negative = 0.0
    for _ in range(1000):
        alpha, p, r = _random_triple(rng)
        ch = GadChannel(p, r)
        initial = prepare(PrepSetting(alpha))
        final = apply(ch, initial)
        eq = equilibrium_state(ch)
        total = total_production(initial, final, eq)
        population = population_production(initial, final, eq)
        coherence = coherence_production(initial, final)
        worst_gap = max(worst_gap, abs(total - population - coherence))
        worst_negative = max(worst_negative, -min(total, population, coherence))
    return _result('budget_decomposition', max(worst_gap, worst_negative), Config.BUDGET_TOL,
                   f"gap {worst_gap:.2e}, negativity {worst_negative:.2e}, 1000 random triples")


def check_relative_entropy_split(rng) -> PropertyResult:
    worst = 0.0
    for _ in range(500):
        state = random_state(rng)
        p = rng.uniform(0.5, 1.0)
        eq = QubitState.diagonal(p, 1.0 - p)
        split = relative_entropy(dephase(state), eq) + rel_entropy_coherence(state)
        worst = max(worst, abs(relative_entropy(state, eq) - split))
    return _result('relative_entropy_split', worst, 1e-10, 'D(rho||eq) = D(dephased||eq) + C(rho)')


def check_contractivity(rng) -> PropertyResult:
    worst = 0.0
    for _ in range(500):
        ch = GadChannel(rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0))
        state = random_state(rng)
        eq = equilibrium_state(ch)
        worst = max(worst, relative_entropy(apply(ch, state), eq) - relative_entropy(state, eq))
    return _result('contractivity', worst, Config.BUDGET_TOL, '500 random (rho, p, r)')


def check_monotone_in_r(rng) -> PropertyResult:
    worst = 0.0
    for p, coherence in FIG_SETS:
        initial = prepare(PrepSetting(alpha_for_coherence(coherence)))
        values = [budget(initial, GadChannel(p, r)).total for r in R_GRID_21]
        worst = max(worst, -float(np.min(np.diff(values))))
    return _result('production_monotone_in_r', worst, Config.BUDGET_TOL, 'fig2/fig3 sets, 21-point r grid')


def check_entropy_bounds(rng) -> PropertyResult:
    worst = 0.0
    ln2 = math.log(2.0)
    for _ in range(500):
        state = random_state(rng)
        entropy = von_neumann_entropy(state)
        coherence = dephasing_entropy_gain(state)
        low, high = closed_form_eigenvalues(state)
        eigen = np.linalg.eigvalsh(state.elements)
        worst = max(worst, -entropy, entropy - ln2, -coherence, coherence - ln2,
                    abs(low - eigen[0]), abs(high - eigen[1]),
                    float(np.max(np.abs(dephase(dephase(state)).elements - dephase(state).elements))))
    return _result('entropy_bounds', worst, 1e-10, '0 <= S, C <= ln 2; closed-form eigenvalues; dephase idempotent')


def check_preparation(rng) -> PropertyResult:
    worst = 0.0
    for alpha in ALPHA_GRID_9:
        setting = PrepSetting(alpha)
        coherent = prepare(setting)
        worst = max(
            worst,
            float(np.max(np.abs(prepare(setting.dephased_copy()).elements - dephase(coherent).elements))),
            float(np.max(np.abs(prepare_with_waveplates(alpha).elements - coherent.elements))),
        )
    for c in GRID_11:
        worst = max(worst, abs(l1_coherence(prepare(PrepSetting(alpha_for_coherence(c)))) - c))
    return _result('state_preparation', worst, 1e-12, 'dephased copy, wave-plate model, coherence round trip')


def check_tomography_round_trip(rng) -> PropertyResult:
    worst = 0.0
    for _ in range(200):
        state = random_state(rng)
        exact = linear_inversion(projector_probabilities(state))
        worst = max(worst, float(np.max(np.abs(exact - state.elements))),
                    float(np.max(np.abs(project_to_physical(state.elements).elements - state.elements))))
    return _result('tomography_round_trip', worst, 1e-12, 'exact frequencies; projection fixes valid states')


def _tomography_references() -> Tuple[Tuple[str, QubitState], ...]:
    return (('evolved p=0.9 r=0.5', apply(GadChannel(0.9, 0.5), PLUS_D)),
            ('I/2', MAXIMALLY_MIXED))


def _seeds(rng, count: int) -> List[int]:
    master = int(rng.integers(0, 2 ** 32))
    return [derive_seed(master, k) for k in range(count)]


def check_tomography_statistics(rng) -> PropertyResult:
    worst = 0.0
    for _, state in _tomography_references():
        records = (simulate_counts(state, STATISTICS_SHOTS, seed) for seed in _seeds(rng, STATISTICS_SEEDS))
        vectors = np.array([project_to_physical(linear_inversion(rec)).bloch_vector for rec in records])
        stderr = vectors.std(axis=0, ddof=1) / math.sqrt(len(vectors))
        worst = max(worst, float(np.max(np.abs(vectors.mean(axis=0) - state.bloch_vector) / stderr)))
    return _result('tomography_statistics', worst, 5.0,
                   f"mean Bloch vector in standard errors, {STATISTICS_SEEDS} seeds x {STATISTICS_SHOTS} shots")


def check_error_bar_calibration(rng) -> PropertyResult:
    worst = 1.0
    for _, state in _tomography_references():
        f_h, f_v, _, _ = projector_probabilities(state)
        binomial = math.sqrt((f_h * (1.0 - f_h) + f_v * (1.0 - f_v)) / STATISTICS_SHOTS)
        for seed in _seeds(rng, CALIBRATION_SEEDS):
            reconstruction = reconstruct_with_errors(state, STATISTICS_SHOTS, seed, CALIBRATION_BOOTSTRAP)
            ratio = float(reconstruction.bloch_stderr[2]) / binomial
            worst = max(worst, ratio, 1.0 / ratio)
    return _result('sigma_z_error_bar_calibration', worst, 1.5,
                   f"bootstrap / binomial stderr factor, {CALIBRATION_SEEDS} seeds per state")


def check_reconstruction_fidelity(rng) -> PropertyResult:
    worst = 0.0
    for state in (PLUS_D, *(s for _, s in _tomography_references())):
        for seed in _seeds(rng, FIDELITY_SEEDS):
            estimate = project_to_physical(linear_inversion(simulate_counts(state, FIDELITY_SHOTS, seed)))
            worst = max(worst, 1.0 - fidelity(estimate, state))
    return _result('reconstruction_fidelity', worst, 1e-3, f"1 - F at {FIDELITY_SHOTS} shots")


def check_projection_idempotent(rng) -> PropertyResult:
    worst = 0.0
    unphysical = 0
    for freqs in rng.uniform(0.0, 1.0, size=(500, 4)):
        matrix = linear_inversion(freqs)
        if np.linalg.norm(QubitState(matrix).bloch_vector) <= 1.0:
            continue
        unphysical += 1
        once = project_to_physical(matrix)
        validate(once)
        twice = project_to_physical(once.elements)
        worst = max(worst, float(np.max(np.abs(twice.elements - once.elements))),
                    abs(float(np.linalg.norm(once.bloch_vector)) - 1.0))
    if unphysical == 0:
        return _result('projection_idempotent', math.inf, 1e-12, 'no unphysical inputs drawn')
    return _result('projection_idempotent', worst, 1e-12, f"{unphysical} unphysical inputs")


def check_klein_inequality(rng) -> PropertyResult:
    worst = 0.0
    for _ in range(500):
        rho, sigma = random_state(rng), random_state(rng)
        distance = trace_distance(rho, sigma)
        worst = max(worst, 2.0 * distance ** 2 - relative_entropy(rho, sigma),
                    abs(relative_entropy(rho, rho)))
    return _result('klein_inequality', worst, 1e-10, 'D(rho||sigma) >= 2 T^2, D(rho||rho) = 0')


def check_dephased_preparation_incoherent(rng) -> PropertyResult:
    worst = 0.0
    for alpha in ALPHA_GRID_9:
        initial = prepare(PrepSetting(alpha, dephased=True))
        worst = max(worst, abs(rel_entropy_coherence(initial)), l1_coherence(initial))
        for p in Config.SCENARIOS['fig2']['p_values']:
            for r in GRID_11:
                worst = max(worst, abs(budget(initial, GadChannel(p, r)).coherence))
    return _result('dephased_preparation_incoherent', worst, 0.0, 'Sigma_coh of the dephased experiment')


def check_sweep_protocol_and_determinism(rng) -> PropertyResult:
    config = SweepConfig.for_scenario('fig3', r_points=3, shots=500, n_bootstrap=5,
                                      seed=int(rng.integers(0, 2 ** 31)))
    first, second = run_sweep(config), run_sweep(config)
    worst = max(abs(row.sigma_coh - row.sigma_coh_direct) for row in first)
    identical = csv_text(first) == csv_text(second)
    if not identical:
        worst = math.inf
    return _result('sweep_protocol_and_determinism', worst, 1e-10,
                   f"difference vs direct Sigma_coh; identical CSV text: {identical}")


def check_anchor_values(rng) -> PropertyResult:
    values = budget(prepare(PrepSetting(0.0)), GadChannel(0.9, 1.0)).as_tuple()
    worst = max(abs(v - a) for v, a in zip(values, ANCHOR))
    return _result('anchor_values', worst, 1e-5, 'alpha=0, p=0.9, r=1')


def check_population_vanishes_near_half(rng) -> PropertyResult:
    result = budget(prepare(PrepSetting(0.0)), GadChannel(0.6, 1.0))
    ratio = result.population / result.total
    return _result('population_share_p06', ratio, 0.15, f"Sigma_pop/Sigma = {ratio:.6f}")


def check_fig3_claims(rng) -> PropertyResult:
    p = Config.SCENARIOS['fig3']['p_values'][0]
    coherences = sorted(Config.SCENARIOS['fig3']['alpha_values'])
    states = [prepare(PrepSetting(alpha_for_coherence(c))) for c in coherences]
    worst = 0.0
    for r in GRID_11:
        pops = [budget(s, GadChannel(p, r)).population for s in states]
        worst = max(worst, max(pops) - min(pops))
    final_coh = [budget(s, GadChannel(p, 1.0)).coherence for s in states]
    ordering = max(0.0, -float(np.min(np.diff(final_coh))))
    return _result('fig3_population_identical_coherence_ordered', max(worst, ordering), 1e-12,
                   f"population spread {worst:.2e}")


PROPERTY_CHECKS: List[Callable[[np.random.Generator], PropertyResult]] = [
    check_kraus_completeness,
    check_fixed_point,
    check_output_is_state,
    check_closed_form,
    check_coherence_decay_independent_of_p,
    check_lindblad_equivalence,
    check_semigroup,
    check_decomposition,
    check_relative_entropy_split,
    check_contractivity,
    check_monotone_in_r,
    check_entropy_bounds,
    check_preparation,
    check_tomography_round_trip,
    check_tomography_statistics,
    check_error_bar_calibration,
    check_reconstruction_fidelity,
    check_projection_idempotent,
    check_klein_inequality,
    check_dephased_preparation_incoherent,
    check_anchor_values,
    check_population_vanishes_near_half,
    check_fig3_claims,
    check_sweep_protocol_and_determinism,
]


def run_property_suite(seed: Optional[int] = None) -> PropertyReport:
    """
    Run every invariant check.

    Args:
        seed (int, optional): Master seed; defaults to Config.PROPERTY_SEED

    Returns:
        PropertyReport: One result per invariant; a check that raises is a failure
    """
    seed = Config.PROPERTY_SEED if seed is None else seed
    rng = np.random.Generator(np.random.PCG64(seed))
    report = PropertyReport(seed=seed)
    for check in PROPERTY_CHECKS:
        name = check.__name__[len('check_'):]
        try:
            result = check(rng)
        except Exception as e:
            logger.warning(f"Property check {name} raised: {e}")
            result = PropertyResult(name=name, passed=False, worst=math.inf, tolerance=0.0,
                                    detail=f"{type(e).__name__}: {e}")
        if result.passed:
            logger.info(result.line())
        else:
            logger.warning(result.line())
        report.results.append(result)
    return report
