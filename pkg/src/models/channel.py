"""Parameter types for the generalized amplitude damping channel."""
import math
from dataclasses import dataclass

from src.utils.errors import ParameterOutOfRangeError

_EDGE_TOL = 1e-12


def _clamped(name: str, value: float, low: float, high: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < low - _EDGE_TOL or value > high + _EDGE_TOL:
        raise ParameterOutOfRangeError(f"{name}={value!r} outside [{low}, {high}]")
    return min(max(value, low), high)


@dataclass(frozen=True)
class GadChannel:
    """GAD channel parameters.

    p in [0.5, 1] weights relaxation against excitation (bath temperature),
    r in [0, 1] is the damping strength (interaction time).
    """
    p: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, 'p', _clamped('p', self.p, 0.5, 1.0))
        object.__setattr__(self, 'r', _clamped('r', self.r, 0.0, 1.0))

    @classmethod
    def from_waveplates(cls, theta: float, phi: float) -> 'GadChannel':
        """Channel realised by wave plates at theta (p = cos^2 2theta) and phi (r = sin^2 2phi)."""
        return cls(p=math.cos(2.0 * theta) ** 2, r=math.sin(2.0 * phi) ** 2)


@dataclass(frozen=True)
class BathSpec:
    """Thermal bath seen by the qubit, in units with hbar = k_B = 1."""
    omega_s: float
    temperature: float
    gamma0: float

    def __post_init__(self):
        for name in ('omega_s', 'temperature', 'gamma0'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterOutOfRangeError(f"{name} must be finite, got {value!r}")
        if self.omega_s <= 0:
            raise ParameterOutOfRangeError(f"omega_s must be positive, got {self.omega_s}")
        if self.gamma0 <= 0:
            raise ParameterOutOfRangeError(f"gamma0 must be positive, got {self.gamma0}")
        if self.temperature < 0:
            raise ParameterOutOfRangeError(
                f"temperature must be non-negative, got {self.temperature}")

    @classmethod
    def for_occupation(cls, n_bar: float, omega_s: float = 1.0, gamma0: float = 1.0) -> 'BathSpec':
        """Bath whose mean thermal occupation at omega_s equals ``n_bar``."""
        if not math.isfinite(n_bar) or n_bar < 0:
            raise ParameterOutOfRangeError(f"Mean occupation must be non-negative, got {n_bar!r}")
        if n_bar == 0:
            return cls(omega_s=omega_s, temperature=0.0, gamma0=gamma0)
        return cls(omega_s=omega_s, temperature=omega_s / math.log1p(1.0 / n_bar), gamma0=gamma0)
