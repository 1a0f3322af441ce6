"""
Interpolation between S_Ψ and the Sobolev seminorm:

    ‖f - f_{Q0}‖_2 ≲ Ψ(M) 2^M ‖f‖_{S_Ψ} + 2^{-M} ‖∇f‖_2    for r = 2^{-M},

checked on the dyadic r-grid, and its optimization over r compared with
the Gagliardo–Nirenberg split ‖∇f‖_2^{1-p/2} ‖f‖_p^{p/2}.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import GridFunction, discrete_gradient_l2
from apps.maximal.services.maximal import lq_norm
from apps.norms.services.classical import lp_norm
from apps.sequences.services.decay import Decay, exponential_decay, require_certified
from apps.stability.services.indices import spsi_norm

logger = logging.getLogger(__name__)

RATIO_HEADER = ['M', 'r', 'lhs', 'rhs', 'ratio']


@dataclass
class InterpolationCheck:
    max_ratio: float
    lhs: float
    spsi_upper: float
    gradient: float
    rows: List[Dict[str, float]] = field(default_factory=list)

    def csv_rows(self):
        return [[row[key] for key in RATIO_HEADER] for row in self.rows]

    def best_rhs(self) -> float:
        return min(row['rhs'] for row in self.rows) if self.rows else math.inf

    def as_dict(self) -> Dict[str, Any]:
        return {
            'max_ratio': self.max_ratio,
            'lhs': self.lhs,
            'spsi_upper': self.spsi_upper,
            'gradient': self.gradient,
            'per_r': self.rows,
        }


def _scales(f: GridFunction, psi: Decay, r_grid: Optional[Sequence[float]]) -> List[int]:
    """M with r = 2^{-M}; by default M = 1..min(J, N_max of Ψ)."""
    if r_grid is None:
        return list(range(1, min(f.J, psi.n_max) + 1))
    scales = []
    for r in r_grid:
        if not 0.0 < r <= 1.0:
            raise ParameterError(f"Radii must lie in (0, 1], got r={r}")
        M = int(round(-math.log2(r)))
        if not math.isclose(r, 2.0 ** -M, rel_tol=1e-12):
            raise ParameterError(f"Radius {r} is not dyadic")
        if M > psi.n_max:
            raise ParameterError(f"Decay {psi.name} is tabulated up to {psi.n_max}, r={r} needs Ψ({M})")
        scales.append(M)
    return sorted(set(scales))


def interp_inequality_check(
    f: GridFunction,
    psi: Decay,
    r_grid: Optional[Sequence[float]] = None,
    eta: Optional[float] = None
) -> InterpolationCheck:
    """
    ratio(r) = ‖f - f_{Q0}‖_2 / (Ψ(-log₂ r)/r · spsi_upper + r ‖∇f‖_2).

    A vanishing right side counts as ratio 0 when the left side vanishes too.
    """
    psi = require_certified(psi, admissible=True)
    gradient = discrete_gradient_l2(f)
    lhs = lq_norm(f.values - float(np.mean(f.values)), f.cell_volume, 2.0)
    spsi_upper = spsi_norm(f, psi, eta).upper

    rows = []
    for M in _scales(f, psi, r_grid):
        rhs = psi(M) * 2.0 ** M * spsi_upper + 2.0 ** -M * gradient
        if rhs > 0.0:
            ratio = lhs / rhs
        else:
            ratio = 0.0 if lhs == 0.0 else math.inf
        rows.append({'M': M, 'r': 2.0 ** -M, 'lhs': lhs, 'rhs': rhs, 'ratio': ratio})

    max_ratio = max((row['ratio'] for row in rows), default=0.0)
    logger.debug(f"Interpolation check: n={f.n}, J={f.J}, max ratio {max_ratio:.6g} over {len(rows)} radii")
    return InterpolationCheck(max_ratio, lhs, spsi_upper, gradient, rows)


def gn_decay(p: float, n_max: Optional[int] = None) -> Decay:
    """Ψ(t) = 2^{-2t(1 - 1/p)}."""
    if not 1.0 < p < 2.0:
        raise ParameterError(f"The Gagliardo–Nirenberg split needs 1 < p < 2, got p={p}")
    return exponential_decay(2.0 * (1.0 - 1.0 / p), n_max)


def gn_recovery(f: GridFunction, p: float = 1.5, eta: Optional[float] = None) -> Dict[str, float]:
    """min over r of the interpolation bound against ‖∇f‖^{1-p/2} ‖f‖_p^{p/2}."""
    psi = gn_decay(p)
    check = interp_inequality_check(f, psi, eta=eta)
    target = check.gradient ** (1.0 - 0.5 * p) * lp_norm(f, p) ** (0.5 * p)
    optimized = check.best_rhs()
    ratio = optimized / target if target > 0.0 else math.inf
    logger.info(f"Gagliardo–Nirenberg recovery at p={p}: optimized {optimized:.6g}, target {target:.6g}")
    return {'p': p, 'optimized': optimized, 'target': target, 'ratio': ratio, 'max_ratio': check.max_ratio}
