"""Kraus representation of the generalized amplitude damping channel."""
import math
from typing import List

import numpy as np

from src.models.channel import GadChannel
from src.models.state import QubitState, validate
from src.utils.errors import MismatchedTemperatureError


def kraus_operators(ch: GadChannel) -> List[np.ndarray]:
    """M0, M1 (relaxation) and M2, M3 (excitation)."""
    p, r = ch.p, ch.r
    keep = math.sqrt(1.0 - r)
    jump = math.sqrt(r)
    relax = math.sqrt(p)
    excite = math.sqrt(1.0 - p)
    return [
        relax * np.array([[1.0, 0.0], [0.0, keep]], dtype=complex),
        relax * np.array([[0.0, jump], [0.0, 0.0]], dtype=complex),
        excite * np.array([[keep, 0.0], [0.0, 1.0]], dtype=complex),
        excite * np.array([[0.0, 0.0], [jump, 0.0]], dtype=complex),
    ]


def completeness_deviation(ch: GadChannel) -> float:
    """max |sum_k M_k^dag M_k - I| over matrix elements."""
    total = sum(m.conj().T @ m for m in kraus_operators(ch))
    return float(np.max(np.abs(total - np.eye(2))))


def apply(ch: GadChannel, state: QubitState) -> QubitState:
    validate(state)
    out = np.zeros((2, 2), dtype=complex)
    for m in kraus_operators(ch):
        out += m @ state.elements @ m.conj().T
    return QubitState(0.5 * (out + out.conj().T))


def equilibrium_state(ch: GadChannel) -> QubitState:
    return QubitState.diagonal(ch.p, 1.0 - ch.p)


def compose(first: GadChannel, second: GadChannel) -> GadChannel:
    """Single channel equal to applying ``first`` then ``second``.

    Same-p GAD channels form a semigroup: 1 - r12 = (1 - r1)(1 - r2).
    """
    if abs(first.p - second.p) > 1e-12:
        raise MismatchedTemperatureError(
            f"Cannot compose channels with p={first.p} and p={second.p}")
    return GadChannel(p=first.p, r=1.0 - (1.0 - first.r) * (1.0 - second.r))
