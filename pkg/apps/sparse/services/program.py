"""
Dynamic program for max Σ_{Q ∈ F} score(Q) over η-sparse families F of the
depth-J dyadic tree.

With canonical witnesses the only thing a cube needs from its subtree is the
measure covered by the maximal family cubes below it. Per cube we tabulate
best(B) = largest score sum of a family inside the cube whose covered measure
is at most B units, one unit being |Q|/G. Children combine by a max-plus
knapsack; a cube may join only with full budget and children covering at most
(1 - η)|Q|.

G = cells(Q) gives the exact supremum (the exhaustive oracle); a fixed
G = 2^{n r} gives a lower bound attained by a genuine sparse family.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.exceptions import BudgetError, ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import DyadicCube, tree_size

logger = logging.getLogger(__name__)


def group_children(level_array: np.ndarray, n: int) -> np.ndarray:
    """Reshape (2^{k+1},)*n + tail into (2^{nk}, 2^n) + tail, children in row-major bit order."""
    side = level_array.shape[0] // 2
    tail = level_array.shape[n:]
    shape: List[int] = []
    for _ in range(n):
        shape.extend([side, 2])
    grouped = level_array.reshape(tuple(shape) + tail)
    order = (
        list(range(0, 2 * n, 2))
        + list(range(1, 2 * n, 2))
        + list(range(2 * n, 2 * n + len(tail)))
    )
    return grouped.transpose(order).reshape((side ** n, 1 << n) + tail)


def maxplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise (a ⊕ b)[u] = max_{i + j = u} a[i] + b[j]."""
    width = a.shape[1]
    out = np.full((a.shape[0], width + b.shape[1] - 1), -np.inf)
    for j in range(b.shape[1]):
        window = out[:, j:j + width]
        np.maximum(window, a + b[:, j:j + 1], out=window)
    return out


def level_units(n: int, J: int, refinement: Optional[int]) -> Tuple[int, ...]:
    """G_k = min(2^{n r}, cells of a level-k cube); refinement None means exact."""
    units = []
    for level in range(J + 1):
        cells = 1 << (n * (J - level))
        units.append(cells if refinement is None else min(1 << (n * refinement), cells))
    return tuple(units)


@dataclass(frozen=True, eq=False)
class TreeProgram:
    """
    Tables of the sparse-family program.

    ``best[k]`` has shape (2^k,)*n + (G_k + 1,); ``partials[k][i]`` is the
    knapsack over the first i + 1 children of every level-k cube.
    """

    n: int
    J: int
    eta: float
    units: Tuple[int, ...]
    best: Tuple[np.ndarray, ...]
    include: Tuple[np.ndarray, ...]
    partials: Tuple[Tuple[np.ndarray, ...], ...]

    @property
    def exact(self) -> bool:
        return all(g == 1 << (self.n * (self.J - k)) for k, g in enumerate(self.units))

    def subtree_best(self, level: int) -> np.ndarray:
        """Best score sum inside every cube of ``level``."""
        return self.best[level][..., -1]

    def total(self) -> float:
        return float(self.subtree_best(0).reshape(-1)[0])

    def bound(self, level: int) -> int:
        """Largest child-unit budget the children of a member cube may cover."""
        child_units = self.units[level + 1]
        return int(math.floor((1.0 - self.eta) * (1 << self.n) * child_units))

    def ratio(self, level: int) -> int:
        """Child units per parent unit."""
        return ((1 << self.n) * self.units[level + 1]) // self.units[level]

    def reconstruct(self, cube: Optional[DyadicCube] = None) -> List[DyadicCube]:
        """A family attaining ``subtree_best`` inside ``cube`` (the root by default)."""
        cube = cube or DyadicCube.root(self.n)
        stack = [(cube, self.units[cube.level])]
        family: List[DyadicCube] = []
        child_bits = list(itertools.product((0, 1), repeat=self.n))
        grouped: Dict[int, np.ndarray] = {}

        while stack:
            current, budget = stack.pop()
            level = current.level
            if budget == 0:
                continue
            joins = budget == self.units[level] and bool(self.include[level][current.index])
            if joins:
                family.append(current)
            if level == self.J:
                continue

            target = self.bound(level) if joins else self.ratio(level) * budget
            flat = int(np.ravel_multi_index(current.index, (1 << level,) * self.n))
            if level not in grouped:
                grouped[level] = group_children(self.best[level + 1], self.n)
            split = self._split(level, flat, target, grouped[level][flat])
            for bits, child_budget in zip(child_bits, split):
                child = DyadicCube(level + 1, tuple(2 * m + b for m, b in zip(current.index, bits)))
                stack.append((child, child_budget))

        return sorted(family)

    def _split(self, level: int, flat: int, target: int, children: np.ndarray) -> List[int]:
        """Child budgets reproducing partials[level][-1][flat, target] exactly."""
        partials = self.partials[level]
        child_units = self.units[level + 1]
        budgets = [0] * len(partials)
        remaining = target
        for i in range(len(partials) - 1, 0, -1):
            value = partials[i][flat, remaining]
            previous = partials[i - 1][flat]
            for j in range(min(remaining, child_units) + 1):
                rest = remaining - j
                if rest < previous.size and previous[rest] + children[i][j] == value:
                    budgets[i] = j
                    remaining = rest
                    break
            else:
                raise ParameterError(f"Knapsack backtrack failed at level {level}, cube {flat}")
        budgets[0] = remaining
        return budgets


def run_program(
    scores: Sequence[np.ndarray],
    n: int,
    eta: Optional[float] = None,
    refinement: Optional[int] = None
) -> TreeProgram:
    """
    Solve the program for per-level nonnegative additive scores (already raised
    to the q-th power).
    """
    eta = float(sparsekit_setting('ETA', eta))
    if not 0.0 < eta < 1.0:
        raise ParameterError(f"Sparseness parameter η must lie in (0, 1), got {eta}")
    J = len(scores) - 1
    units = level_units(n, J, refinement)

    leaf = np.asarray(scores[J], dtype=np.float64)
    best: List[np.ndarray] = [np.stack([np.zeros_like(leaf), leaf], axis=-1)]
    include: List[np.ndarray] = [leaf > 0.0]
    partials: List[Tuple[np.ndarray, ...]] = []

    for level in range(J - 1, -1, -1):
        children = group_children(best[0], n)
        partial = children[:, 0, :]
        steps = [partial]
        for i in range(1, 1 << n):
            partial = maxplus(partial, children[:, i, :])
            steps.append(partial)

        shape = (1 << level,) * n
        ratio = ((1 << n) * units[level + 1]) // units[level]
        exclude = partial[:, ::ratio][:, :units[level] + 1].copy()
        bound = int(math.floor((1.0 - eta) * (1 << n) * units[level + 1]))
        joined = np.asarray(scores[level], dtype=np.float64).reshape(-1) + partial[:, bound]
        joins = joined > exclude[:, -1]
        exclude[:, -1] = np.where(joins, joined, exclude[:, -1])

        best.insert(0, exclude.reshape(shape + (units[level] + 1,)))
        include.insert(0, joins.reshape(shape))
        partials.insert(0, tuple(steps))
        logger.debug(f"Sparse program level {level}: {exclude.shape[0]} cubes, G={units[level]}")

    return TreeProgram(
        n=n,
        J=J,
        eta=eta,
        units=units,
        best=tuple(best),
        include=tuple(include),
        partials=tuple(partials),
    )


def exact_program(scores: Sequence[np.ndarray], n: int, eta: Optional[float] = None,
                  max_cubes: Optional[int] = None) -> TreeProgram:
    """Exact supremum over all sparse subfamilies; refuses trees above the budget."""
    J = len(scores) - 1
    limit = int(sparsekit_setting('BRUTEFORCE_MAX_CUBES', max_cubes))
    size = tree_size(n, J)
    if size > limit:
        logger.warning(f"Exhaustive sparse search refused: {size} cubes > budget {limit}")
        raise BudgetError(f"Exhaustive search over {size} cubes exceeds the budget of {limit} cubes")
    return run_program(scores, n, eta, refinement=None)
