"""Initial-state preparation from wave-plate angles.

HWP1 at angle alpha rotates |H> into cos(2a)|H> + sin(2a)|V>; an unbalanced
interferometer then destroys the H/V coherence, and HWP2 fixed at pi/8 maps
the result onto

    rho = 1/2 (|H><H| + |V><V|) + cos(4a)/2 (|H><V| + |V><H|).
"""
import math

import numpy as np

from src.core.measures import dephase
from src.models.channel import GadChannel
from src.models.preparation import PrepSetting
from src.models.state import KET_H, QubitState
from src.utils.errors import CoherenceOutOfRangeError, ParameterOutOfRangeError

HWP2_ANGLE = math.pi / 8.0


def prepare(setting: PrepSetting) -> QubitState:
    if setting.dephased:
        return QubitState.maximally_mixed()
    c = math.cos(4.0 * setting.alpha) / 2.0
    return QubitState(np.array([[0.5, c], [c, 0.5]], dtype=complex))


def alpha_for_coherence(c: float) -> float:
    """HWP1 angle (radians) giving l1-coherence c."""
    if not 0.0 <= c <= 1.0:
        raise CoherenceOutOfRangeError(f"Coherence {c!r} outside [0, 1]")
    return math.acos(c) / 4.0


def evolved_closed_form(setting: PrepSetting, ch: GadChannel) -> QubitState:
    """Closed-form output of the GAD channel on a prepared state."""
    p, r = ch.p, ch.r
    ground = p * r + (1.0 - r) / 2.0
    excited = (1.0 + r) / 2.0 - p * r
    c = 0.0 if setting.dephased else math.cos(4.0 * setting.alpha) * math.sqrt(1.0 - r) / 2.0
    return QubitState(np.array([[ground, c], [c, excited]], dtype=complex))


def hwp_theta_for_p(p: float) -> float:
    """SLI1 wave-plate angle theta with p = cos^2(2 theta)."""
    if not 0.5 <= p <= 1.0:
        raise ParameterOutOfRangeError(f"p={p!r} outside [0.5, 1]")
    return math.acos(math.sqrt(p)) / 2.0


def hwp_phi_for_r(r: float) -> float:
    """SLI2/SLI3 wave-plate angle phi with r = sin^2(2 phi)."""
    if not 0.0 <= r <= 1.0:
        raise ParameterOutOfRangeError(f"r={r!r} outside [0, 1]")
    return math.asin(math.sqrt(r)) / 2.0


def half_wave_plate(angle: float) -> np.ndarray:
    """Jones matrix of an ideal half-wave plate with fast axis at ``angle``."""
    c, s = math.cos(2.0 * angle), math.sin(2.0 * angle)
    return np.array([[c, s], [s, -c]], dtype=complex)


def prepare_with_waveplates(alpha: float) -> QubitState:
    """Jones-calculus model of the preparation stage."""
    rotated = QubitState.pure(half_wave_plate(alpha) @ KET_H)
    incoherent = dephase(rotated)
    hwp2 = half_wave_plate(HWP2_ANGLE)
    out = hwp2 @ incoherent.elements @ hwp2.conj().T
    return QubitState(0.5 * (out + out.conj().T))
