import math

import numpy as np
import pytest

from src.core.measures import (binary_entropy, closed_form_eigenvalues, dephase, dephasing_entropy_gain,
                               fidelity, l1_coherence, purity, random_state, rel_entropy_coherence,
                               relative_entropy, trace_distance, von_neumann_entropy)
from src.models.state import EXCITED, GROUND, MAXIMALLY_MIXED, PLUS_D, QubitState
from src.utils.errors import ConsistencyError, NegativeEigenvalueError

LN2 = math.log(2.0)
EVOLVED = QubitState(np.array([[0.7, math.sqrt(0.5) / 2], [math.sqrt(0.5) / 2, 0.3]]))


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(11))


def coherence_oracle(ground: float, c: float) -> float:
    """C = H(ground) - H(lambda_max) from the closed-form 2x2 eigenvalues."""
    radius = math.sqrt((ground - 0.5) ** 2 + c ** 2)
    return binary_entropy(ground) - binary_entropy(0.5 + radius)


def test_von_neumann_entropy_examples():
    """Test entropy of pure, maximally mixed and classical states."""
    assert von_neumann_entropy(PLUS_D) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(MAXIMALLY_MIXED) == pytest.approx(LN2)
    assert von_neumann_entropy(QubitState.diagonal(0.9, 0.1)) == pytest.approx(0.325083, abs=1e-6)


def test_entropy_rejects_negative_eigenvalue():
    """Test that an unphysical spectrum is not silently clamped."""
    with pytest.raises(NegativeEigenvalueError):
        von_neumann_entropy(QubitState(np.array([[0.5, 0.6], [0.6, 0.5]])))


def test_relative_entropy_examples():
    """Test relative entropy including the support violation."""
    assert relative_entropy(EVOLVED, EVOLVED) == pytest.approx(0.0, abs=1e-12)
    expected = -(0.5 * math.log(0.9) + 0.5 * math.log(0.1))
    assert relative_entropy(PLUS_D, QubitState.diagonal(0.9, 0.1)) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(1.203973, abs=1e-6)
    assert relative_entropy(MAXIMALLY_MIXED, QubitState.diagonal(1.0, 0.0)) == math.inf


def test_relative_entropy_finite_on_shared_support():
    """Test that a ground-state argument is finite against a rank-one ground reference."""
    assert relative_entropy(GROUND, GROUND) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_non_negative(rng):
    """Test Klein's inequality on random pairs."""
    for _ in range(200):
        assert relative_entropy(random_state(rng), random_state(rng)) >= 0.0


def test_dephase():
    """Test dephasing on coherent and diagonal states."""
    assert dephase(PLUS_D).allclose(MAXIMALLY_MIXED)
    diag = QubitState.diagonal(0.3, 0.7)
    assert dephase(diag).allclose(diag)
    assert dephase(EVOLVED).allclose(QubitState.diagonal(0.7, 0.3))


def test_l1_coherence():
    """Test the l1-norm of coherence."""
    assert l1_coherence(PLUS_D) == pytest.approx(1.0)
    assert l1_coherence(EVOLVED) == pytest.approx(math.sqrt(0.5))
    assert l1_coherence(MAXIMALLY_MIXED) == 0.0


def test_relative_entropy_of_coherence():
    """Test C against closed-form evaluations."""
    assert rel_entropy_coherence(QubitState.diagonal(0.8, 0.2)) == 0.0
    assert rel_entropy_coherence(PLUS_D) == pytest.approx(LN2)
    oracle = coherence_oracle(0.7, math.sqrt(0.5) / 2)
    assert rel_entropy_coherence(EVOLVED) == pytest.approx(oracle, abs=1e-12)
    assert oracle == pytest.approx(0.2997, abs=1e-3)


SKEWED = QubitState(np.array([[0.7, 0.3], [0.3, 0.3]]))


def test_coherence_rejects_entropy_drop(mocker):
    """Test that a negative entropy gain beyond round-off raises instead of reading 0."""
    true_entropy = von_neumann_entropy
    mocker.patch('src.core.measures.von_neumann_entropy', side_effect=lambda s: -true_entropy(s))
    assert dephasing_entropy_gain(SKEWED) == pytest.approx(-0.20691, abs=1e-4)
    with pytest.raises(ConsistencyError):
        rel_entropy_coherence(SKEWED)


def test_coherence_clamps_round_off(mocker):
    """Test that a gain just below zero is reported as exactly 0."""
    mocker.patch('src.core.measures.von_neumann_entropy', side_effect=[0.5, 0.5 + 1e-13])
    assert rel_entropy_coherence(SKEWED) == 0.0


def test_entropy_gain_matches_coherence():
    """Test that the unclamped gain equals C on a coherent state."""
    assert dephasing_entropy_gain(SKEWED) == pytest.approx(rel_entropy_coherence(SKEWED), abs=0)
    assert dephasing_entropy_gain(SKEWED) > 0.2


def test_relative_entropy_split(rng):
    """Test D(rho||eq) = D(dephase(rho)||eq) + C(rho) for diagonal eq."""
    eq = QubitState.diagonal(0.75, 0.25)
    for _ in range(100):
        state = random_state(rng)
        split = relative_entropy(dephase(state), eq) + rel_entropy_coherence(state)
        assert relative_entropy(state, eq) == pytest.approx(split, abs=1e-12)


def test_fidelity():
    """Test the qubit fidelity formula."""
    assert fidelity(EVOLVED, EVOLVED) == pytest.approx(1.0)
    assert fidelity(GROUND, EXCITED) == pytest.approx(0.0, abs=1e-12)
    assert fidelity(MAXIMALLY_MIXED, GROUND) == pytest.approx(0.5)


def test_trace_distance_and_purity():
    """Test distance and purity helpers."""
    assert trace_distance(GROUND, EXCITED) == pytest.approx(1.0)
    assert trace_distance(PLUS_D, PLUS_D) == 0.0
    assert purity(PLUS_D) == pytest.approx(1.0)
    assert purity(MAXIMALLY_MIXED) == pytest.approx(0.5)


def test_closed_form_eigenvalues_match_numerics(rng):
    """Test the 2x2 eigenvalue formula against numpy."""
    low, high = closed_form_eigenvalues(EVOLVED)
    assert low == pytest.approx(0.5 - math.sqrt(0.165))
    assert high == pytest.approx(0.5 + math.sqrt(0.165))
    for _ in range(50):
        state = random_state(rng)
        np.testing.assert_allclose(closed_form_eigenvalues(state),
                                   np.linalg.eigvalsh(state.elements), atol=1e-12)


def test_binary_entropy_edges():
    """Test that the binary entropy handles certain outcomes."""
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(LN2)


def test_random_state_in_bloch_ball(rng):
    """Test that random states are physical."""
    for _ in range(100):
        assert np.linalg.norm(random_state(rng).bloch_vector) <= 1.0 + 1e-12
