"""
Access to the SPARSEKIT settings dict with per-call overrides.
"""
from typing import Any, Optional

from django.conf import settings


DEFAULTS = {
    'VERSION': '1.0.0',
    'ETA': 0.5,
    'PADDING': 3,
    'BRUTEFORCE_MAX_CUBES': 31,
    'BUDGET_REFINEMENT': 1,
    'DECAY_NMAX': 64,
    'DOUBLING_C': 2,
    'ADMISSIBILITY_BOUND': 16.0,
    'DOUBLING_FLOOR': 0.05,
    'DECAY_TAIL_RATIO': 0.05,
    'EMBEDDING_BOUND': 1000.0,
    'DIAGONAL_QUAD_TOL': 1e-10,
    'CONVOLUTION_METHOD': 'auto',
    'DEFAULT_SEED': 0,
    'SLOPE_TOLERANCE': 0.15,
    'CRITICAL_SLOPE_TOLERANCE': 0.2,
}


def sparsekit_setting(name: str, override: Optional[Any] = None) -> Any:
    """Return ``override`` when given, else the configured value of ``name``."""
    if override is not None:
        return override
    configured = getattr(settings, 'SPARSEKIT', {})
    return configured.get(name, DEFAULTS[name])
