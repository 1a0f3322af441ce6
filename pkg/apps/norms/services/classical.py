"""
Classical norms on the depth-J dyadic tree.

Scores are c(Q) = (1 + ln(1/|Q|))^α |Q|^{-1/p'} ∫_Q |f|. Morrey takes the max
over cubes, RMT the best ℓ^q sum over packings (antichains of the tree) and the
congruent variant the best full-level sum.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import DyadicCube, GridFunction, IntegralTable, build_table
from apps.maximal.services.maximal import lq_norm, weighted_levels
from apps.sparse.services.program import group_children

logger = logging.getLogger(__name__)


@dataclass
class NormReport:
    """A norm value with the cubes that attain it."""

    space: str
    p: Optional[float]
    q: Optional[float]
    alpha: float
    value: float
    route: str
    witness: List[DyadicCube] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'space': self.space,
            'p': self.p,
            'q': self.q,
            'alpha': self.alpha,
            'value': self.value,
            'route': self.route,
            'witness': [[cube.level, *cube.index] for cube in self.witness],
            **self.extras,
        }


def _check_exponent(name: str, value: float):
    if not value >= 1.0:
        raise ParameterError(f"Exponent {name} must be >= 1, got {value}")


def classical_scores(
    f: GridFunction,
    p: float,
    alpha: float = 0.0,
    table: Optional[IntegralTable] = None
) -> List[np.ndarray]:
    """(1 + ln(1/|Q|))^α |Q|^{-1/p'} ∫_Q |f| per level."""
    _check_exponent('p', p)
    table = table or build_table(f)
    return weighted_levels(table.absolute, f.n, 1.0 - 1.0 / p, alpha)


def lp_norm(f: GridFunction, p: float) -> float:
    _check_exponent('p', p)
    return lq_norm(f.values, f.cell_volume, p)


def morrey_norm(f: GridFunction, p: float, alpha: float = 0.0) -> NormReport:
    """max over dyadic cubes of the score; ties go to the coarsest cube."""
    scores = classical_scores(f, p, alpha)
    best, witness = -1.0, None
    for level, level_scores in enumerate(scores):
        index = np.unravel_index(int(np.argmax(level_scores)), level_scores.shape)
        value = float(level_scores[index])
        if value > best:
            best, witness = value, DyadicCube(level, tuple(int(i) for i in index))
    return NormReport('morrey', p, math.inf, alpha, best, 'exact', [witness])


def rmt_norm(f: GridFunction, p: float, q: float, alpha: float = 0.0) -> NormReport:
    """
    Exact supremum over packings by the antichain program
    best(Q) = max(c(Q)^q, Σ_children best(child)).
    """
    if math.isinf(q):
        report = morrey_norm(f, p, alpha)
        report.space = 'rmt'
        return report
    _check_exponent('q', q)
    n, J = f.n, f.J
    powered = [level ** q for level in classical_scores(f, p, alpha)]

    best = [powered[J]]
    keep = [np.ones(powered[J].shape, dtype=bool)]
    for level in range(J - 1, -1, -1):
        children = group_children(best[0], n).sum(axis=1).reshape(powered[level].shape)
        keep.insert(0, powered[level] >= children)
        best.insert(0, np.maximum(powered[level], children))

    witness = _antichain(keep, n, J)
    value = float(best[0].reshape(-1)[0]) ** (1.0 / q)
    logger.debug(f"RMT norm: n={n}, J={J}, p={p}, q={q}, α={alpha}, packing of {len(witness)} cubes")
    return NormReport('rmt', p, q, alpha, value, 'dp', witness)


def _antichain(keep: List[np.ndarray], n: int, J: int) -> List[DyadicCube]:
    stack = [DyadicCube.root(n)]
    chosen = []
    while stack:
        cube = stack.pop()
        if keep[cube.level][cube.index] or cube.level == J:
            chosen.append(cube)
        else:
            stack.extend(cube.children())
    return sorted(chosen)


def crmt_norm(f: GridFunction, p: float, q: float, alpha: float = 0.0) -> NormReport:
    """max over levels k of (Σ_{Q ∈ D_k} c(Q)^q)^{1/q}."""
    _check_exponent('q', q)
    if math.isinf(q):
        raise ParameterError("The congruent RMT norm needs q < ∞")
    scores = classical_scores(f, p, alpha)
    sums = [float(np.sum(level ** q)) for level in scores]
    level = int(np.argmax(sums))
    witness = [DyadicCube(level, tuple(int(i) for i in index)) for index in np.ndindex(scores[level].shape)]
    report = NormReport('crmt', p, q, alpha, sums[level] ** (1.0 / q), 'exact', witness)
    report.extras['level'] = level
    return report


def evaluate_packing(f: GridFunction, cubes: List[DyadicCube], p: float, q: float, alpha: float = 0.0) -> float:
    """(Σ c(Q)^q)^{1/q} over pairwise disjoint cubes."""
    ordered = sorted(cubes)
    for i, first in enumerate(ordered):
        for second in ordered[i + 1:]:
            if first.contains(second):
                raise ParameterError(f"Cubes {first} and {second} overlap; a packing must be disjoint")
    scores = classical_scores(f, p, alpha)
    return sum(float(scores[c.level][c.index]) ** q for c in ordered) ** (1.0 / q)

