import math

import numpy as np
import pytest

from src.channel.gad import apply
from src.core.measures import binary_entropy
from src.entropy.production import (budget, budget_at_time, budget_from_states,
                                    coherence_production, entropy_difference,
                                    population_production, relative_entropy_to_equilibrium,
                                    total_production)
from src.models.budget import EntropyBudget
from src.models.channel import BathSpec, GadChannel
from src.models.preparation import PrepSetting
from src.models.state import MAXIMALLY_MIXED, PLUS_D, QubitState
from src.prep.preparation import alpha_for_coherence, prepare
from src.utils.errors import ConsistencyError, IndeterminateError, ParameterOutOfRangeError

EQ_09 = QubitState.diagonal(0.9, 0.1)
EVOLVED = apply(GadChannel(0.9, 0.5), PLUS_D)


def anchor_oracle(p: float):
    """(Sigma, Sigma_pop, Sigma_coh) for |D><D| fully damped at p."""
    total = -0.5 * (math.log(p) + math.log(1.0 - p))
    population = math.log(0.5) - 0.5 * math.log(p * (1.0 - p))
    return total, population, math.log(2.0)


def test_total_production_examples():
    """Test Sigma on the documented states."""
    assert total_production(EVOLVED, EVOLVED, EQ_09) == pytest.approx(0.0, abs=1e-12)
    assert total_production(PLUS_D, EQ_09, EQ_09) == pytest.approx(1.203973, abs=1e-6)
    assert total_production(MAXIMALLY_MIXED, MAXIMALLY_MIXED, MAXIMALLY_MIXED) == pytest.approx(0.0, abs=1e-12)


def test_population_production_examples():
    """Test Sigma_pop on the documented states."""
    assert population_production(PLUS_D, EQ_09, EQ_09) == pytest.approx(0.510826, abs=1e-6)
    diag = QubitState.diagonal(0.3, 0.7)
    assert population_production(diag, diag, EQ_09) == pytest.approx(0.0, abs=1e-12)
    coherent_at_eq = QubitState(np.array([[0.9, 0.2], [0.2, 0.1]]))
    ch = GadChannel(0.9, 0.4)
    assert population_production(coherent_at_eq, apply(ch, coherent_at_eq), EQ_09) == pytest.approx(0.0, abs=1e-12)


def test_coherence_production_examples():
    """Test Sigma_coh including the partially damped state."""
    assert coherence_production(QubitState.diagonal(0.6, 0.4), EQ_09) == 0.0
    assert coherence_production(PLUS_D, EQ_09) == pytest.approx(math.log(2.0))
    radius = math.sqrt(0.165)
    oracle = math.log(2.0) - (binary_entropy(0.7) - binary_entropy(0.5 + radius))
    assert coherence_production(PLUS_D, EVOLVED) == pytest.approx(oracle, abs=1e-12)
    assert oracle == pytest.approx(0.393466, abs=1e-3)


def test_reference_must_be_diagonal():
    """Test that a coherent reference state is rejected."""
    with pytest.raises(ParameterOutOfRangeError):
        total_production(PLUS_D, EVOLVED, EVOLVED)


def test_budget_anchor_values():
    """Test the fully damped |D><D| at p=0.9."""
    result = budget(PLUS_D, GadChannel(0.9, 1.0))
    np.testing.assert_allclose(result.as_tuple(), anchor_oracle(0.9), atol=1e-12)
    np.testing.assert_allclose(result.as_tuple(), (1.203973, 0.510826, 0.693147), atol=1e-5)


def test_budget_is_zero_without_evolution():
    """Test that r=0 produces no entropy."""
    result = budget(prepare(PrepSetting(0.1)), GadChannel(0.75, 0.0))
    np.testing.assert_allclose(result.as_tuple(), (0.0, 0.0, 0.0), atol=1e-12)


def test_budget_at_infinite_temperature_from_equilibrium():
    """Test that the maximally mixed state at p=0.5 produces nothing."""
    for r in (0.2, 0.7, 1.0):
        result = budget(MAXIMALLY_MIXED, GadChannel(0.5, r))
        np.testing.assert_allclose(result.as_tuple(), (0.0, 0.0, 0.0), atol=1e-12)


def test_population_share_at_p06():
    """Test that the population part almost vanishes near infinite temperature."""
    result = budget(PLUS_D, GadChannel(0.6, 1.0))
    total, population, _ = anchor_oracle(0.6)
    ratio = result.population / result.total
    assert ratio == pytest.approx(population / total, abs=1e-10)
    assert ratio == pytest.approx(0.0286045, abs=1e-6)
    assert ratio <= 0.15


def test_additivity_over_random_triples():
    """Test Sigma = Sigma_pop + Sigma_coh and non-negativity."""
    rng = np.random.Generator(np.random.PCG64(2024))
    for _ in range(300):
        alpha = rng.uniform(0.0, math.pi / 4)
        ch = GadChannel(rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0))
        result = budget(prepare(PrepSetting(alpha)), ch)
        assert abs(result.total - result.population - result.coherence) < 1e-10
        assert min(result.as_tuple()) >= 0.0


def test_smaller_coherence_smaller_contribution():
    """Test that Sigma_coh grows with the initial coherence."""
    values = [budget(prepare(PrepSetting(alpha_for_coherence(c))), GadChannel(0.9, 1.0)).coherence
              for c in (0.4, 0.6, 0.8)]
    assert values[0] < values[1] < values[2]


def test_indeterminate_at_zero_temperature():
    """Test that p=1 with partial damping is infinity minus infinity."""
    with pytest.raises(IndeterminateError):
        budget(PLUS_D, GadChannel(1.0, 0.5))


def test_infinite_production_at_zero_temperature_full_damping():
    """Test that full damping to the ground state diverges consistently."""
    result = budget(PLUS_D, GadChannel(1.0, 1.0))
    assert result.total == math.inf
    assert result.population == math.inf
    assert result.coherence == pytest.approx(math.log(2.0))
    assert not result.is_finite


def test_entropy_difference():
    """Test the infinity bookkeeping of the difference helper."""
    assert entropy_difference(math.inf, 1.0, 'x') == math.inf
    with pytest.raises(IndeterminateError):
        entropy_difference(math.inf, math.inf, 'x')


def test_checked_budget_clamps_and_rejects():
    """Test the clamp window and the consistency failures."""
    clamped = EntropyBudget.checked(total=-1e-12, population=0.0, coherence=0.0)
    assert clamped.total == 0.0
    with pytest.raises(ConsistencyError):
        EntropyBudget.checked(total=-1e-3, population=0.0, coherence=0.0)
    with pytest.raises(ConsistencyError):
        EntropyBudget.checked(total=1.0, population=0.2, coherence=0.5)


def test_budget_from_states_matches_budget():
    """Test the state-level entry point."""
    ch = GadChannel(0.75, 0.3)
    initial = prepare(PrepSetting(0.2))
    direct = budget_from_states(initial, apply(ch, initial), QubitState.diagonal(0.75, 0.25))
    assert direct == budget(initial, ch)


def test_budget_at_time_grows_with_time():
    """Test the physical-time entry point."""
    bath = BathSpec.for_occupation(0.125)
    early = budget_at_time(PLUS_D, bath, 0.1)
    late = budget_at_time(PLUS_D, bath, 20.0)
    assert 0.0 < early.total < late.total
    assert late.total == pytest.approx(1.203973, abs=1e-4)


def test_relative_entropy_to_equilibrium():
    """Test the equilibrium-referenced relative entropy."""
    assert relative_entropy_to_equilibrium(PLUS_D, GadChannel(0.9, 0.5)) == pytest.approx(1.203973, abs=1e-6)
