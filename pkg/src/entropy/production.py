"""Entropy production of a GAD evolution and its population/coherence split.

Entropy production is the drop in relative entropy to the equilibrium state:

    Sigma     = D(rho || eq) - D(rho' || eq)
    Sigma_pop = D(dephase(rho) || eq) - D(dephase(rho') || eq)
    Sigma_coh = C(rho) - C(rho')

and Sigma = Sigma_pop + Sigma_coh. Relative entropies can be infinite when
p = 1; infinity minus infinity raises IndeterminateError.
"""
import math

from src.channel.gad import apply, equilibrium_state
from src.channel.lindblad import channel_from_bath
from src.core.measures import dephase, rel_entropy_coherence, relative_entropy
from src.models.budget import EntropyBudget
from src.models.channel import BathSpec, GadChannel
from src.models.state import QubitState, validate
from src.utils.errors import IndeterminateError, ParameterOutOfRangeError


def entropy_difference(before: float, after: float, label: str) -> float:
    if math.isinf(before) and math.isinf(after):
        raise IndeterminateError(
            f"{label}: both relative entropies to equilibrium diverge; "
            "use p < 1 or r > 0")
    return before - after


def _require_diagonal(eq: QubitState) -> None:
    if not eq.is_diagonal:
        raise ParameterOutOfRangeError("Equilibrium reference state must be diagonal")


def relative_entropy_to_equilibrium(state: QubitState, ch: GadChannel) -> float:
    return relative_entropy(state, equilibrium_state(ch))


def total_production(initial: QubitState, final: QubitState, eq: QubitState) -> float:
    _require_diagonal(eq)
    return entropy_difference(relative_entropy(initial, eq), relative_entropy(final, eq),
                              'Total entropy production')


def population_production(initial: QubitState, final: QubitState, eq: QubitState) -> float:
    _require_diagonal(eq)
    return entropy_difference(relative_entropy(dephase(initial), eq),
                              relative_entropy(dephase(final), eq),
                              'Population entropy production')


def coherence_production(initial: QubitState, final: QubitState) -> float:
    return rel_entropy_coherence(initial) - rel_entropy_coherence(final)


def budget_from_states(initial: QubitState, final: QubitState, eq: QubitState) -> EntropyBudget:
    return EntropyBudget.checked(
        total=total_production(initial, final, eq),
        population=population_production(initial, final, eq),
        coherence=coherence_production(initial, final),
    )


def budget(initial: QubitState, ch: GadChannel) -> EntropyBudget:
    """Entropy budget of one channel use; the reference is always the channel's fixed point."""
    validate(initial)
    return budget_from_states(initial, apply(ch, initial), equilibrium_state(ch))


def budget_at_time(initial: QubitState, bath: BathSpec, t: float) -> EntropyBudget:
    """Entropy budget after interacting with ``bath`` for time t."""
    return budget(initial, channel_from_bath(bath, t))
