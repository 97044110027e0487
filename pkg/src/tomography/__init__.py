"""
Tomography Simulation Package
Finite-shot four-basis tomography with linear inversion and bootstrap error bars.
"""

from .simulator import (bootstrap_statistic, bootstrap_values, linear_inversion,
                        project_to_physical, reconstruct_with_errors, simulate_counts)

__all__ = [
    'simulate_counts',
    'linear_inversion',
    'project_to_physical',
    'reconstruct_with_errors',
    'bootstrap_statistic',
    'bootstrap_values',
]
