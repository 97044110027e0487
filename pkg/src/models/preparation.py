import math
from dataclasses import dataclass

from src.utils.errors import AngleOutOfRangeError

ALPHA_MAX = math.pi / 4.0


@dataclass(frozen=True)
class PrepSetting:
    """Preparation-stage setting: HWP1 angle (radians) and whether coherence is destroyed."""
    alpha: float
    dephased: bool = False

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha < -1e-12 or alpha > ALPHA_MAX + 1e-12:
            raise AngleOutOfRangeError(f"alpha={alpha!r} rad outside [0, pi/4]")
        object.__setattr__(self, 'alpha', min(max(alpha, 0.0), ALPHA_MAX))

    @classmethod
    def from_degrees(cls, degrees: float, dephased: bool = False) -> 'PrepSetting':
        return cls(alpha=math.radians(degrees), dephased=dephased)

    @property
    def alpha_degrees(self) -> float:
        return math.degrees(self.alpha)

    def dephased_copy(self) -> 'PrepSetting':
        return PrepSetting(alpha=self.alpha, dephased=True)
