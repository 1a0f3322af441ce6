"""
Lorentz L^{1,2} and Lorentz–Zygmund L^{(1,∞)}(log L)^{1/2} norms on Q0, |Q0| = 1.

Both depend on F(t) = t f**(t) = ∫_0^t f*, which is piecewise linear for a
step function: F = a + b t on every step (t_i, t_{i+1}] of f*.
"""
import logging
import math
from typing import Dict, Iterator, Tuple

import numpy as np
from scipy import special

from apps.grid.services.grid import GridFunction, Rearrangement, rearrangement

logger = logging.getLogger(__name__)


def _pieces(arrangement: Rearrangement) -> Iterator[Tuple[float, float, float, float]]:
    """(t0, t1, a, b) with F(t) = a + b t on (t0, t1]."""
    h = arrangement.step
    previous = 0.0
    for i, (b, primitive) in enumerate(zip(arrangement.fstar, arrangement.primitive)):
        t0 = i * h
        yield t0, t0 + h, previous - float(b) * t0, float(b)
        previous = float(primitive)


def lorentz_12(f: GridFunction) -> float:
    """[∫_0^1 (t f**(t))^2 dt/t]^{1/2}, exact on every piece."""
    total = 0.0
    for t0, t1, a, b in _pieces(rearrangement(f)):
        piece = 2.0 * a * b * (t1 - t0) + 0.5 * b * b * (t1 * t1 - t0 * t0)
        if a != 0.0:
            piece += a * a * math.log(t1 / t0)
        total += piece
    return math.sqrt(max(total, 0.0))


def _log_half_weight(t: float) -> float:
    return math.sqrt(1.0 - math.log(t))


def _stationary_points(t0: float, t1: float, a: float, b: float) -> Iterator[float]:
    """Critical points of (a + b t)(1 - ln t)^{1/2} inside (t0, t1)."""
    if b <= 0.0 or a <= 0.0:
        return
    argument = -a / (2.0 * b * math.sqrt(math.e))
    if argument < -1.0 / math.e:
        return
    for branch in (0, -1):
        w = special.lambertw(argument, branch)
        if abs(w.imag) > 1e-12:
            continue
        t = math.exp(0.5 + float(w.real))
        if t0 < t < t1:
            yield t


def lorentz_zygmund_half(f: GridFunction) -> float:
    """sup_{0<t<=1} t (1 - ln t)^{1/2} f**(t), with interior maxima of every step resolved."""
    best = 0.0
    for t0, t1, a, b in _pieces(rearrangement(f)):
        candidates = [t1] + list(_stationary_points(t0, t1, a, b))
        if t0 > 0.0:
            candidates.append(t0)
        for t in candidates:
            best = max(best, (a + b * t) * _log_half_weight(t))
    return best


def lorentz_norms(f: GridFunction) -> Dict[str, float]:
    return {'l12': lorentz_12(f), 'l1inf_log_half': lorentz_zygmund_half(f)}


def lorentz_zygmund_profile(f: GridFunction, t: np.ndarray) -> np.ndarray:
    """t (1 - ln t)^{1/2} f**(t) at the given points of (0, 1]."""
    t = np.asarray(t, dtype=np.float64)
    return t * np.sqrt(1.0 - np.log(t)) * rearrangement(f).fstarstar_at(t)
