"""
SR_{p,q}log^α norms:

    ‖f‖_{SR} = sup over η-sparse F of { Σ_{Q ∈ F} [(1 + ln(1/|Q|))^α |Q|^{-1/p'} ∫_Q |f|]^q }^{1/q}

computed by four routes: evaluation on a verified family (lower bound), the
maximal-function bound, the exact program on small trees and the certified
interval that brackets the supremum on any grid.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from config.exceptions import ParameterError, UnverifiedFamilyError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import (
    DyadicCube,
    GridFunction,
    IntegralTable,
    block_sum,
    build_table,
    coarsen,
    oscillation_levels,
)
from apps.grid.services.reports import CertifiedInterval
from apps.maximal.services.maximal import lq_norm, sweep_maximum, weighted_levels, weighted_maximal
from apps.sparse.services.domination import SRParams
from apps.sparse.services.families import SparseFamily, verify_sparse
from apps.sparse.services.program import TreeProgram, exact_program, run_program

logger = logging.getLogger(__name__)


def sr_scores(f: GridFunction, params: SRParams, table: Optional[IntegralTable] = None) -> List[np.ndarray]:
    """c(Q) = (1 + ln(1/|Q|))^α |Q|^{-1/p'} ∫_Q |f| per level."""
    table = table or build_table(f)
    return weighted_levels(table.absolute, f.n, params.score_exponent, params.alpha)


def lq_aggregate(values: Sequence[float], q: float) -> float:
    """(Σ v^q)^{1/q} of nonnegative values; a single value is returned unchanged."""
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.size == 1:
        return float(values[0])
    if math.isinf(q):
        return float(values.max())
    if q == 2.0:
        return math.hypot(*values.tolist())
    return float(np.sum(values ** q)) ** (1.0 / q)


def sr_norm_family(f: GridFunction, family: SparseFamily, params: SRParams) -> float:
    """Evaluate the SR sum on a family; a lower bound for the norm once verified."""
    if family.n != f.n or family.J != f.J:
        raise ParameterError(f"Family (n={family.n}, J={family.J}) does not match grid (n={f.n}, J={f.J})")
    report = verify_sparse(family)
    if not report.ok:
        raise UnverifiedFamilyError(
            f"Family is not {report.eta}-sparse (worst witness ratio {report.worst_ratio})"
        )
    scores = sr_scores(f, params)
    values = [float(scores[cube.level][cube.index]) for cube in family.cubes]
    if not values:
        return 0.0
    return lq_aggregate(values, params.q)


@dataclass(frozen=True)
class MaximalBound:
    """value = ‖M_{λ,α,Q0} f‖_{L^q}; upper = η^{-1/q} · value bounds the SR norm."""

    value: float
    upper: float

    def as_dict(self) -> Dict[str, float]:
        return {'value': self.value, 'upper': self.upper}


def sr_norm_maximal(f: GridFunction, params: SRParams, eta: Optional[float] = None) -> MaximalBound:
    params.require_monotone()
    if math.isinf(params.q):
        raise ParameterError("The maximal route needs q < ∞; use the Morrey norm for q = ∞")
    eta = float(sparsekit_setting('ETA', eta))
    maximal = weighted_maximal(f, params.maximal_exponent, params.alpha)
    value = lq_norm(maximal, f.cell_volume, params.q)
    return MaximalBound(value=value, upper=(1.0 / eta) ** (1.0 / params.q) * value)


# ═══════════════════════════════════════════════════════════════════
# Exact supremum on small trees
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class ExactSupremum:
    value: float
    family: SparseFamily


def exact_supremum(
    scores: Sequence[np.ndarray],
    n: int,
    q: float,
    eta: Optional[float] = None,
    max_cubes: Optional[int] = None
) -> ExactSupremum:
    """Exact sup over every η-sparse subfamily, with an attaining family re-verified."""
    J = len(scores) - 1
    if math.isinf(q):
        best = max(float(level.max()) for level in scores)
        return ExactSupremum(best, _argmax_family(scores, n, eta))
    powered = [level ** q for level in scores]
    program = exact_program(powered, n, eta, max_cubes)
    family = SparseFamily.of(n, J, program.reconstruct(), program.eta)
    report = verify_sparse(family)
    if not report.ok:
        raise UnverifiedFamilyError(f"Exact program produced a non-sparse family (ratio {report.worst_ratio})")
    return ExactSupremum(program.total() ** (1.0 / q), family)


def _argmax_family(scores: Sequence[np.ndarray], n: int, eta: Optional[float]) -> SparseFamily:
    level = max(range(len(scores)), key=lambda k: float(scores[k].max()))
    index = np.unravel_index(int(np.argmax(scores[level])), scores[level].shape)
    return SparseFamily.of(n, len(scores) - 1, [DyadicCube(level, tuple(int(i) for i in index))], eta)


def sr_norm_bruteforce(
    f: GridFunction,
    params: SRParams,
    eta: Optional[float] = None,
    max_cubes: Optional[int] = None
) -> float:
    return exact_supremum(sr_scores(f, params), f.n, params.q, eta, max_cubes).value


# ═══════════════════════════════════════════════════════════════════
# Certified intervals
# ═══════════════════════════════════════════════════════════════════

def subtree_sums(powered: Sequence[np.ndarray]) -> List[np.ndarray]:
    """Σ_{Q ⊆ P} score(Q) for every cube P, one array per level."""
    sums = [powered[-1]]
    for level in range(len(powered) - 2, -1, -1):
        sums.insert(0, powered[level] + coarsen(sums[0]))
    return sums


@dataclass(frozen=True, eq=False)
class SparseSupremum:
    """
    Bracketing data for sup_F (Σ_{Q ∈ F} c(Q)^q)^{1/q}, optionally restricted to
    cubes of depth >= d.

    lower: the budgeted program, attained by a genuine sparse family.
    upper: per subtree, min{η^{-1} ∫ M^q, Σ c^q}, where M is the maximal
    function of c(Q)|Q|^{-1/q} over cubes of depth >= d.
    """

    n: int
    J: int
    q: float
    scores: Sequence[np.ndarray]
    program: TreeProgram
    full_sums: Sequence[np.ndarray]

    @classmethod
    def build(
        cls,
        scores: Sequence[np.ndarray],
        n: int,
        q: float,
        eta: Optional[float] = None,
        refinement: Optional[int] = None
    ) -> 'SparseSupremum':
        if not 1.0 <= q < math.inf:
            raise ParameterError(f"Certified sparse intervals need 1 <= q < ∞, got {q}")
        refinement = int(sparsekit_setting('BUDGET_REFINEMENT', refinement))
        powered = [level ** q for level in scores]
        program = run_program(powered, n, eta, refinement)
        return cls(n, len(scores) - 1, q, tuple(scores), program, tuple(subtree_sums(powered)))

    @property
    def eta(self) -> float:
        return self.program.eta

    @property
    def truncated(self) -> bool:
        """Some level ran on fewer budget units than it has cells."""
        return not self.program.exact

    def maximal_values(self) -> List[np.ndarray]:
        return [level * 2.0 ** (k * self.n / self.q) for k, level in enumerate(self.scores)]

    def subtree_bounds(self, depth: int) -> tuple:
        """(lower, upper) arrays of q-th powers for every cube of ``depth``."""
        if not 0 <= depth <= self.J:
            raise ParameterError(f"Depth {depth} outside 0..{self.J}")
        lower = self.program.subtree_best(depth)
        maximal = sweep_maximum(self.maximal_values(), start=depth)
        cell_volume = 2.0 ** (-self.n * self.J)
        integral = block_sum(maximal ** self.q * cell_volume, 1 << (self.J - depth)) / self.eta
        upper = np.maximum(np.minimum(integral, self.full_sums[depth]), lower)
        return lower, upper

    def interval(self, depth: int = 0) -> CertifiedInterval:
        lower, upper = self.subtree_bounds(depth)
        root = 1.0 / self.q
        return CertifiedInterval(
            lq_aggregate(lower ** root, self.q),
            lq_aggregate(upper ** root, self.q),
        )

    def witness_family(self) -> SparseFamily:
        family = SparseFamily.of(self.n, self.J, self.program.reconstruct(), self.eta)
        report = verify_sparse(family)
        if not report.ok:
            raise UnverifiedFamilyError(f"Budget program produced a non-sparse family (ratio {report.worst_ratio})")
        return family


def sr_norm_certified(
    f: GridFunction,
    params: SRParams,
    eta: Optional[float] = None,
    refinement: Optional[int] = None
) -> CertifiedInterval:
    """Certified [lower, upper] bracket of the SR norm on the depth-J tree."""
    scores = sr_scores(f, params)
    if math.isinf(params.q):
        best = max(float(level.max()) for level in scores)
        return CertifiedInterval(best, best)
    return SparseSupremum.build(scores, f.n, params.q, eta, refinement).interval(0)


# ═══════════════════════════════════════════════════════════════════
# L² characterizations
# ═══════════════════════════════════════════════════════════════════

def oscillation_scores(f: GridFunction, table: Optional[IntegralTable] = None) -> List[np.ndarray]:
    """|Q|^{-1/2} ∫_Q |f - f_Q| per level."""
    levels = oscillation_levels(f, table)
    return [2.0 ** (k * f.n / 2.0) * level for k, level in enumerate(levels)]


def sharp_maximal(f: GridFunction, table: Optional[IntegralTable] = None) -> GridFunction:
    """M^# f(x) = max_{Q ∋ x} |Q|^{-1} ∫_Q |f - f_Q|."""
    levels = oscillation_levels(f, table)
    values = sweep_maximum([2.0 ** (k * f.n) * level for k, level in enumerate(levels)])
    return GridFunction(f.n, f.J, values, nonneg=True)


def _interval_payload(interval: CertifiedInterval) -> Dict[str, float]:
    payload = interval.as_dict()
    payload.update({'midpoint': interval.midpoint, 'width': interval.width})
    return payload


def sparse_l2_norms(
    f: GridFunction,
    eta: Optional[float] = None,
    refinement: Optional[int] = None
) -> Dict[str, Dict[str, float]]:
    """
    Certified brackets of the identity characterization (SR_{2,2}, comparable
    to ‖f‖_{L²}) and the oscillation characterization (comparable to
    ‖f - f_{Q0}‖_{L²}).
    """
    table = build_table(f)
    identity = SparseSupremum.build(sr_scores(f, SRParams(2.0, 2.0), table), f.n, 2.0, eta, refinement)
    oscillation = SparseSupremum.build(oscillation_scores(f, table), f.n, 2.0, eta, refinement)
    return {
        'identity': _interval_payload(identity.interval(0)),
        'oscillation': _interval_payload(oscillation.interval(0)),
    }
