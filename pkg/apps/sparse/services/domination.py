"""
Constructive sparse domination of the weighted dyadic maximal function.

Starting from Q0, every active root R selects its maximal strict dyadic
subcubes Q with val(Q) ≥ C·val(R), where

    val(Q) = |Q|^{-1/p' - 1/q} (1 + ln(1/|Q|))^α ∫_Q |f|,

and the selection recurses into every selected cube. Then
M_{λ,α,Q0} f ≤ C Σ_{Q ∈ F} val(Q) 1_Q pointwise and the family is ½-sparse.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import DyadicCube, GridFunction, IntegralTable, build_table, upsample
from apps.maximal.services.maximal import weighted_levels, weighted_maximal
from apps.sparse.services.families import SparseFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SRParams:
    """Exponents of the SR_{p,q}log^α scale."""

    p: float
    q: float = 2.0
    alpha: float = 0.0

    def __post_init__(self):
        if not self.p >= 1.0 or math.isinf(self.p):
            raise ParameterError(f"Exponent p must satisfy 1 <= p < ∞, got {self.p}")
        if not self.q >= 1.0:
            raise ParameterError(f"Exponent q must satisfy q >= 1, got {self.q}")
        if not math.isfinite(self.alpha):
            raise ParameterError(f"Log exponent α must be finite, got {self.alpha}")

    @property
    def score_exponent(self) -> float:
        """1/p' in the score |Q|^{-1/p'} (1 + ln(1/|Q|))^α ∫_Q |f|."""
        return 1.0 - 1.0 / self.p

    @property
    def maximal_exponent(self) -> float:
        """1/p' + 1/q = 1 - λ/n."""
        return self.score_exponent + 1.0 / self.q

    @property
    def gap(self) -> float:
        """1/p - 1/q."""
        return 1.0 / self.p - 1.0 / self.q

    def lam(self, n: int) -> float:
        return n * self.gap

    @property
    def monotone(self) -> bool:
        return self.p <= self.q < math.inf and (self.p < self.q or self.alpha <= 0.0)

    def require_monotone(self) -> 'SRParams':
        if not self.monotone:
            raise ParameterError(
                f"(p, q, α) = ({self.p}, {self.q}, {self.alpha}) is outside the monotone regime "
                f"1 <= p <= q < ∞ with α <= 0 when p = q"
            )
        return self


def domination_constant(params: SRParams) -> float:
    """2·max{1, e^{λ-α} (α/λ)^α} with λ = 1/p - 1/q; equals 2 when p = q or α < 0."""
    gap = params.gap
    alpha = params.alpha
    if gap == 0.0 or alpha < 0.0:
        return 2.0
    factor = math.exp(gap - alpha) * (alpha / gap) ** alpha
    return 2.0 * max(1.0, factor)


def domination_values(f: GridFunction, params: SRParams, table: Optional[IntegralTable] = None) -> List[np.ndarray]:
    """val(Q) for every cube, one array per level."""
    table = table or build_table(f)
    return weighted_levels(table.absolute, f.n, params.maximal_exponent, params.alpha)


def sparse_dominate(
    f: GridFunction,
    params: SRParams,
    eta: Optional[float] = None,
    table: Optional[IntegralTable] = None
) -> SparseFamily:
    """Run the stopping-time selection and return the dominating family."""
    params.require_monotone()
    n, J = f.n, f.J
    values = domination_values(f, params, table)
    constant = domination_constant(params)

    selected = [np.zeros((1 << level,) * n, dtype=bool) for level in range(J + 1)]
    selected[0][(0,) * n] = True
    stack = [DyadicCube.root(n)]

    while stack:
        root = stack.pop()
        base = float(values[root.level][root.index])
        if base <= 0.0:
            continue
        threshold = constant * base
        covered = None
        for level in range(root.level + 1, J + 1):
            width = 1 << (level - root.level)
            window = tuple(slice(m * width, (m + 1) * width) for m in root.index)
            candidates = values[level][window] >= threshold
            if covered is not None:
                candidates &= ~covered
            for offset in np.argwhere(candidates):
                index = tuple(m * width + int(o) for m, o in zip(root.index, offset))
                selected[level][index] = True
                stack.append(DyadicCube(level, index))
            blocked = candidates if covered is None else (covered | candidates)
            covered = upsample(blocked, 2)

    family = SparseFamily.from_level_masks(n, J, selected, eta)
    logger.info(f"Sparse domination selected {len(family)} cubes (n={n}, J={J}, C={constant:.6g})")
    return family


@dataclass
class DominationCheck:
    max_ratio: float
    constant: float
    worst_cell: Optional[tuple] = None

    def as_dict(self) -> Dict:
        return {'max_ratio': self.max_ratio, 'constant': self.constant, 'worst_cell': self.worst_cell}


def family_sum(family: SparseFamily, values: List[np.ndarray]) -> np.ndarray:
    """Σ_{Q ∈ F} values(Q) 1_Q on the finest cells."""
    masks = family.level_masks()
    accumulated = np.where(masks[0], values[0], 0.0)
    for level in range(1, family.J + 1):
        accumulated = upsample(accumulated, 2) + np.where(masks[level], values[level], 0.0)
    return accumulated


def check_domination(
    f: GridFunction,
    family: SparseFamily,
    params: SRParams,
    constant: Optional[float] = None
) -> DominationCheck:
    """
    max over cells of M_{λ,α,Q0} f / (C Σ_{Q ∈ F} val(Q) 1_Q).

    Cells where the right side vanishes count as ratio 0 when the maximal
    function vanishes too and as +inf otherwise.

    The ratio is at most 1 and need not reach it: C carries a factor 2 from
    the stopping rule, so f ≡ 1 against {Q0} gives exactly 1/C = 1/2 when p = q.
    """
    if family.n != f.n or family.J != f.J:
        raise ParameterError(f"Family (n={family.n}, J={family.J}) does not match grid (n={f.n}, J={f.J})")
    constant = domination_constant(params) if constant is None else constant
    table = build_table(f)
    values = domination_values(f, params, table)
    lhs = weighted_maximal(f, params.maximal_exponent, params.alpha, table)
    rhs = constant * family_sum(family, values)

    ratio = np.zeros(lhs.shape)
    positive = rhs > 0.0
    ratio[positive] = lhs[positive] / rhs[positive]
    ratio[~positive & (lhs > 0.0)] = math.inf

    worst = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    return DominationCheck(
        max_ratio=float(ratio[worst]),
        constant=constant,
        worst_cell=tuple(int(i) for i in worst),
    )
