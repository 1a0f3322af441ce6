"""
Weighted dyadic maximal operators.

M_{λ,α,Q0} f(x) = max_{Q ∋ x} |Q|^{λ/n - 1} (1 + ln(1/|Q|))^α ∫_Q |f|

is evaluated by one root-to-leaf sweep over per-level value arrays. The same
per-level arrays feed the sparse-domination selection, so both read identical
floating-point values.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import (
    GridFunction,
    IntegralTable,
    build_table,
    log_weight,
    upsample,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaximalParams:
    """λ, α and (optionally) the exponents p, q with λ = n(1/p - 1/q)."""

    lam: float
    alpha: float = 0.0
    p: Optional[float] = None
    q: Optional[float] = None

    @classmethod
    def from_exponents(cls, n: int, p: float, q: float, alpha: float = 0.0) -> 'MaximalParams':
        if p < 1 or q < 1:
            raise ParameterError(f"Exponents must satisfy p, q >= 1, got p={p}, q={q}")
        lam = n * (1.0 / p - 1.0 / q)
        return cls(lam=lam, alpha=alpha, p=p, q=q)

    def validate(self, n: int) -> 'MaximalParams':
        if not 0.0 <= self.lam < n:
            raise ParameterError(f"λ must lie in [0, n) = [0, {n}), got {self.lam}")
        if self.p is not None and self.q is not None and self.p == self.q and self.lam != 0.0:
            raise ParameterError("p = q forces λ = 0")
        return self


def level_coefficient(level: int, n: int, exponent: float, alpha: float) -> float:
    """|Q|^{-exponent} (1 + k n ln 2)^α for a level-k cube."""
    return 2.0 ** (level * n * exponent) * log_weight(level, n) ** alpha


def weighted_levels(
    integrals: Sequence[np.ndarray],
    n: int,
    exponent: float,
    alpha: float
) -> List[np.ndarray]:
    """Per-level arrays |Q|^{-exponent} (1 + ln(1/|Q|))^α · integrals[k]."""
    return [
        level_coefficient(level, n, exponent, alpha) * integrals[level]
        for level in range(len(integrals))
    ]


def sweep_maximum(levels: Sequence[np.ndarray], start: int = 0) -> np.ndarray:
    """Pointwise max over levels start..J of the per-level values, on the finest cells."""
    current = levels[start]
    for level in range(start + 1, len(levels)):
        current = np.maximum(upsample(current, 2), levels[level])
    return current


def weighted_maximal(
    f: GridFunction,
    exponent: float,
    alpha: float = 0.0,
    table: Optional[IntegralTable] = None
) -> np.ndarray:
    """
    max_{Q ∋ x} |Q|^{-exponent} (1 + ln(1/|Q|))^α ∫_Q |f| on the finest cells.

    No range check on ``exponent``; callers that need λ ∈ [0, n) use
    dyadic_maximal.
    """
    table = table or build_table(f)
    return sweep_maximum(weighted_levels(table.absolute, f.n, exponent, alpha))


def dyadic_maximal(
    f: GridFunction,
    params: MaximalParams,
    table: Optional[IntegralTable] = None
) -> GridFunction:
    params.validate(f.n)
    values = weighted_maximal(f, 1.0 - params.lam / f.n, params.alpha, table)
    return GridFunction(f.n, f.J, values, nonneg=True)


# ═══════════════════════════════════════════════════════════════════
# Shifted-grid fractional maximal function
# ═══════════════════════════════════════════════════════════════════

def _summed_area(padded: np.ndarray) -> np.ndarray:
    """Zero-prefixed cumulative sums: S[i] = Σ_{j < i} padded[j]."""
    cumulative = padded
    for axis in range(padded.ndim):
        cumulative = np.cumsum(cumulative, axis=axis)
    table = np.zeros(tuple(s + 1 for s in padded.shape))
    table[(slice(1, None),) * padded.ndim] = cumulative
    return table


def _box_sums(table: np.ndarray, starts: Sequence[np.ndarray], width: int) -> np.ndarray:
    """Sums over the boxes [starts, starts + width) on the outer product of per-axis starts."""
    n = len(starts)
    total = np.zeros(tuple(s.size for s in starts))
    for corner in itertools.product((0, 1), repeat=n):
        sign = -1.0 if (n - sum(corner)) % 2 else 1.0
        index = np.ix_(*(start + bit * width for start, bit in zip(starts, corner)))
        total += sign * table[index]
    return np.maximum(total, 0.0)


def fractional_maximal(f: GridFunction, lam: float) -> GridFunction:
    """
    Approximate the all-cubes fractional maximal function 𝓜_λ on Q0.

    f is placed in the middle of a zero-padded domain of 3·2^J cells per side.
    For every level the 3^n grids translated by ⌊s·L/3⌋ cells (s ∈ {0,1,2}^n,
    L the cube width in cells) are scanned; the unshifted dyadic maximal
    function is included so dyadic ≤ fractional holds on every cell.
    """
    n, J = f.n, f.J
    if not 0.0 <= lam < n:
        raise ParameterError(f"λ must lie in [0, n) = [0, {n}), got {lam}")

    side = f.side
    padded = np.zeros((3 * side,) * n)
    padded[(slice(side, 2 * side),) * n] = np.abs(f.values) * f.cell_volume
    table = _summed_area(padded)
    positions = np.arange(side, 2 * side)

    result = dyadic_maximal(f, MaximalParams(lam=lam)).values.copy()
    for level in range(J + 1):
        width = 1 << (J - level)
        coefficient = level_coefficient(level, n, 1.0 - lam / n, 0.0)
        offsets = sorted({(s * width) // 3 for s in range(3)})
        for shift in itertools.product(offsets, repeat=n):
            starts = [o + width * ((positions - o) // width) for o in shift]
            values = coefficient * _box_sums(table, starts, width)
            np.maximum(result, values, out=result)

    logger.debug(f"Fractional maximal function computed for n={n}, J={J}, λ={lam}")
    return GridFunction(n, J, result, nonneg=True)


def lq_norm(values: np.ndarray, cell_volume: float, q: float) -> float:
    """(Σ |v|^q · cell_volume)^{1/q}, or max |v| when q = ∞."""
    if math.isinf(q):
        return float(np.max(np.abs(values))) if values.size else 0.0
    return float(np.sum(np.abs(values) ** q) * cell_volume) ** (1.0 / q)
