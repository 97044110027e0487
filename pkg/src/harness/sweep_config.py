"""Sweep configuration: scenario presets, flat config files and validation.

Precedence when a value is given in more than one place:
CLI flag > config file > environment (Config) > built-in default.
"""
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from dotenv import dotenv_values

from config import Config
from src.models.preparation import ALPHA_MAX, PrepSetting
from src.prep.preparation import alpha_for_coherence
from src.utils.errors import ConfigInvalidError

SCENARIO_NAMES = ('fig2', 'fig3', 'custom')
ALPHA_UNITS = ('degrees', 'coherence')

FILE_KEYS = {
    'SCENARIO', 'P_VALUES', 'ALPHA_VALUES', 'ALPHA_UNITS', 'R_GRID', 'R_POINTS',
    'SHOTS', 'BOOTSTRAP', 'SEED', 'OUTPUT',
}


def uniform_r_grid(points: int) -> Tuple[float, ...]:
    if points < 2:
        raise ConfigInvalidError(f"r-grid needs at least 2 points, got {points}")
    return tuple(float(r) for r in np.linspace(0.0, 1.0, points))


def _float_list(key: str, raw: str) -> List[float]:
    try:
        values = [float(item) for item in raw.split(',') if item.strip()]
    except ValueError as e:
        raise ConfigInvalidError(f"{key}: expected comma-separated numbers, got {raw!r}") from e
    if not values:
        raise ConfigInvalidError(f"{key} is empty")
    return values


def _integer(key: str, raw: Any) -> int:
    try:
        return int(str(raw).strip())
    except ValueError as e:
        raise ConfigInvalidError(f"{key}: expected an integer, got {raw!r}") from e


@dataclass(frozen=True)
class SweepConfig:
    """One sweep over (p, alpha, r); alpha_values are read in ``alpha_units``."""
    scenario: str
    p_values: Tuple[float, ...]
    alpha_values: Tuple[float, ...]
    alpha_units: str = 'coherence'
    r_grid: Tuple[float, ...] = field(default_factory=lambda: uniform_r_grid(Config.DEFAULT_R_POINTS))
    shots: int = Config.DEFAULT_SHOTS
    n_bootstrap: int = Config.DEFAULT_BOOTSTRAP
    seed: int = Config.DEFAULT_SEED
    output_path: str = ''

    def __post_init__(self):
        for name in ('p_values', 'alpha_values', 'r_grid'):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if not self.output_path:
            object.__setattr__(self, 'output_path',
                               os.path.join(Config.OUTPUT_DIR, f"{self.scenario}.csv"))
        self._validate()

    def _validate(self):
        if self.scenario not in SCENARIO_NAMES:
            raise ConfigInvalidError(f"Unknown scenario {self.scenario!r}; expected one of {SCENARIO_NAMES}")
        if self.alpha_units not in ALPHA_UNITS:
            raise ConfigInvalidError(f"Unknown alpha units {self.alpha_units!r}; expected one of {ALPHA_UNITS}")
        for name in ('p_values', 'alpha_values', 'r_grid'):
            values = getattr(self, name)
            if not values:
                raise ConfigInvalidError(f"{name} must not be empty")
            if not all(math.isfinite(v) for v in values):
                raise ConfigInvalidError(f"{name} contains a non-finite value")
        if any(not 0.5 <= p <= 1.0 for p in self.p_values):
            raise ConfigInvalidError(f"p values must lie in [0.5, 1]: {self.p_values}")
        if any(not 0.0 <= r <= 1.0 for r in self.r_grid):
            raise ConfigInvalidError(f"r values must lie in [0, 1]: {self.r_grid}")
        if self.alpha_units == 'degrees':
            limit = math.degrees(ALPHA_MAX)
            if any(not 0.0 <= a <= limit for a in self.alpha_values):
                raise ConfigInvalidError(f"alpha values must lie in [0, {limit:g}] degrees: {self.alpha_values}")
        elif any(not 0.0 <= c <= 1.0 for c in self.alpha_values):
            raise ConfigInvalidError(f"Coherence values must lie in [0, 1]: {self.alpha_values}")
        if self.shots < 1:
            raise ConfigInvalidError(f"shots must be >= 1, got {self.shots}")
        if self.n_bootstrap < 2:
            raise ConfigInvalidError(f"bootstrap must be >= 2, got {self.n_bootstrap}")
        if self.seed < 0:
            raise ConfigInvalidError(f"seed must be non-negative, got {self.seed}")

    def settings(self) -> List[Tuple[float, float]]:
        """(alpha in radians, initial l1-coherence) for every configured alpha value."""
        out = []
        for value in self.alpha_values:
            if self.alpha_units == 'degrees':
                alpha = PrepSetting.from_degrees(value).alpha
                out.append((alpha, abs(math.cos(4.0 * alpha))))
            else:
                out.append((alpha_for_coherence(value), value))
        return out

    @property
    def grid_size(self) -> int:
        return len(self.p_values) * len(self.alpha_values) * len(self.r_grid)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'scenario': self.scenario,
            'p_values': list(self.p_values),
            'alpha_values': list(self.alpha_values),
            'alpha_units': self.alpha_units,
            'r_grid': list(self.r_grid),
            'shots': self.shots,
            'n_bootstrap': self.n_bootstrap,
            'seed': self.seed,
            'output_path': self.output_path,
        }

    @classmethod
    def for_scenario(cls, scenario: str, r_points: Optional[int] = None,
                     r_grid: Optional[Sequence[float]] = None, shots: Optional[int] = None,
                     n_bootstrap: Optional[int] = None, seed: Optional[int] = None,
                     output_path: Optional[str] = None) -> 'SweepConfig':
        """Preset figure scenario; any argument left as None falls back to Config."""
        if scenario not in Config.SCENARIOS:
            raise ConfigInvalidError(f"No preset for scenario {scenario!r}")
        preset = Config.SCENARIOS[scenario]
        if r_grid is None:
            r_grid = uniform_r_grid(r_points if r_points is not None else Config.DEFAULT_R_POINTS)
        return cls(
            scenario=scenario,
            p_values=tuple(preset['p_values']),
            alpha_values=tuple(preset['alpha_values']),
            alpha_units=preset['alpha_units'],
            r_grid=tuple(r_grid),
            shots=Config.DEFAULT_SHOTS if shots is None else shots,
            n_bootstrap=Config.DEFAULT_BOOTSTRAP if n_bootstrap is None else n_bootstrap,
            seed=Config.DEFAULT_SEED if seed is None else seed,
            output_path=output_path or '',
        )

    @classmethod
    def from_file(cls, path: str, **overrides: Any) -> 'SweepConfig':
        """
        Build a sweep from a flat KEY=value file.

        Args:
            path (str): Config file; see FILE_KEYS for the accepted keys
            **overrides: CLI values (shots, n_bootstrap, seed, output_path, r_points);
                None means "not given"

        Returns:
            SweepConfig: The validated configuration
        """
        if not os.path.isfile(path):
            raise ConfigInvalidError(f"Config file not found: {path}")
        values = {k.strip().upper(): v for k, v in dotenv_values(path).items()}
        unknown = sorted(set(values) - FILE_KEYS)
        if unknown:
            raise ConfigInvalidError(f"Unknown config keys in {path}: {', '.join(unknown)}")
        missing = sorted(k for k, v in values.items() if v is None or not str(v).strip())
        if missing:
            raise ConfigInvalidError(f"Config keys without a value in {path}: {', '.join(missing)}")
        if 'R_GRID' in values and 'R_POINTS' in values:
            raise ConfigInvalidError("Give either R_GRID or R_POINTS, not both")

        scenario = values.get('SCENARIO', 'custom').strip().lower()
        preset = Config.SCENARIOS.get(scenario, {})
        if scenario not in SCENARIO_NAMES:
            raise ConfigInvalidError(f"Unknown scenario {scenario!r}; expected one of {SCENARIO_NAMES}")
        if not preset and not {'P_VALUES', 'ALPHA_VALUES'} <= set(values):
            raise ConfigInvalidError("A custom scenario needs P_VALUES and ALPHA_VALUES")

        p_values = (_float_list('P_VALUES', values['P_VALUES']) if 'P_VALUES' in values
                    else preset['p_values'])
        alpha_values = (_float_list('ALPHA_VALUES', values['ALPHA_VALUES']) if 'ALPHA_VALUES' in values
                        else preset['alpha_values'])
        alpha_units = values.get('ALPHA_UNITS', preset.get('alpha_units', 'coherence')).strip().lower()

        r_points = overrides.get('r_points')
        if r_points is not None:
            r_grid = uniform_r_grid(r_points)
        elif 'R_GRID' in values:
            r_grid = _float_list('R_GRID', values['R_GRID'])
        else:
            r_grid = uniform_r_grid(_integer('R_POINTS', values.get('R_POINTS', Config.DEFAULT_R_POINTS)))

        def pick(override_key: str, file_key: str, default: int) -> int:
            if overrides.get(override_key) is not None:
                return overrides[override_key]
            if file_key in values:
                return _integer(file_key, values[file_key])
            return default

        return cls(
            scenario=scenario,
            p_values=tuple(p_values),
            alpha_values=tuple(alpha_values),
            alpha_units=alpha_units,
            r_grid=tuple(r_grid),
            shots=pick('shots', 'SHOTS', Config.DEFAULT_SHOTS),
            n_bootstrap=pick('n_bootstrap', 'BOOTSTRAP', Config.DEFAULT_BOOTSTRAP),
            seed=pick('seed', 'SEED', Config.DEFAULT_SEED),
            output_path=overrides.get('output_path') or values.get('OUTPUT', '').strip(),
        )
