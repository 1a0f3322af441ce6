"""
Piecewise-constant functions on Q0 = [0,1)^n and exact integrals over dyadic cubes.

A GridFunction is constant on each of the 2^J cells per side, so every integral
over a dyadic cube of level <= J is a finite sum. Per-level sums are built as a
pyramid (each parent is the sum of its 2^n children in a fixed order), which
makes additivity hold exactly and keeps results bit-reproducible.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np

from config.exceptions import ParameterError

logger = logging.getLogger(__name__)

MAX_DIMENSION = 3
LN2 = math.log(2.0)


# ═══════════════════════════════════════════════════════════════════
# Dyadic cubes
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True, order=True)
class DyadicCube:
    """The cube 2^-level * (index + [0,1)^n)."""

    level: int
    index: Tuple[int, ...]

    def __post_init__(self):
        if self.level < 0:
            raise ParameterError(f"Cube level must be >= 0, got {self.level}")
        bound = 1 << self.level
        if any(m < 0 or m >= bound for m in self.index):
            raise ParameterError(f"Cube index {self.index} outside [0, {bound}) at level {self.level}")
        object.__setattr__(self, 'index', tuple(int(m) for m in self.index))

    @classmethod
    def root(cls, n: int) -> 'DyadicCube':
        return cls(0, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.index)

    @property
    def side(self) -> float:
        return 2.0 ** -self.level

    @property
    def measure(self) -> float:
        return 2.0 ** (-self.level * self.n)

    def parent(self) -> 'DyadicCube':
        if self.level == 0:
            raise ParameterError("The root cube has no parent")
        return DyadicCube(self.level - 1, tuple(m >> 1 for m in self.index))

    def ancestor(self, level: int) -> 'DyadicCube':
        """Ancestor at ``level`` (the cube itself when levels agree)."""
        if level > self.level:
            raise ParameterError(f"Level {level} is deeper than cube level {self.level}")
        shift = self.level - level
        return DyadicCube(level, tuple(m >> shift for m in self.index))

    def children(self) -> List['DyadicCube']:
        return [
            DyadicCube(self.level + 1, tuple(2 * m + b for m, b in zip(self.index, bits)))
            for bits in itertools.product((0, 1), repeat=self.n)
        ]

    def contains(self, other: 'DyadicCube') -> bool:
        return other.level >= self.level and other.ancestor(self.level) == self

    def cell_slices(self, J: int) -> Tuple[slice, ...]:
        """Slices selecting the finest cells of a depth-J grid that lie in this cube."""
        if self.level > J:
            raise ParameterError(f"Cube level {self.level} exceeds grid depth {J}")
        width = 1 << (J - self.level)
        return tuple(slice(m * width, (m + 1) * width) for m in self.index)


def iter_cubes(n: int, J: int) -> Iterator[DyadicCube]:
    """All dyadic cubes of levels 0..J in (level, row-major index) order."""
    for level in range(J + 1):
        for index in itertools.product(range(1 << level), repeat=n):
            yield DyadicCube(level, index)


def tree_size(n: int, J: int) -> int:
    return sum(1 << (n * k) for k in range(J + 1))


def log_weight(level: int, n: int) -> float:
    """1 - (log|Q|)_- = 1 + k n ln 2 for a level-k cube of Q0 (natural logarithm)."""
    return 1.0 + level * n * LN2


# ═══════════════════════════════════════════════════════════════════
# Grid functions
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Piecewise-constant real field on Q0 at dyadic resolution 2^-J.

    ``values`` has shape (2^J,)*n. When ``nonneg`` is set the object stands for
    the measure with cell masses values * 2^(-nJ).
    """

    n: int
    J: int
    values: np.ndarray
    nonneg: bool = False

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ParameterError(f"Dimension n must be in 1..{MAX_DIMENSION}, got {self.n}")
        if self.J < 0:
            raise ParameterError(f"Depth J must be >= 0, got {self.J}")
        values = np.array(self.values, dtype=np.float64)
        shape = (1 << self.J,) * self.n
        if values.ndim == 1 and values.size == (1 << (self.n * self.J)):
            values = values.reshape(shape)
        if values.shape != shape:
            raise ParameterError(
                f"Grid values have shape {values.shape}, expected {shape} for n={self.n}, J={self.J}"
            )
        if not np.all(np.isfinite(values)):
            raise ParameterError("Grid values must be finite")
        if self.nonneg and np.any(values < 0):
            raise ParameterError("A nonnegative measure cannot have negative cell values")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_flat(cls, n: int, J: int, values, nonneg: bool = False) -> 'GridFunction':
        """Build from a row-major flat sequence of 2^(nJ) cell values."""
        flat = np.asarray(values, dtype=np.float64).ravel()
        expected = 1 << (n * J)
        if flat.size != expected:
            raise ParameterError(f"Expected {expected} cell values for n={n}, J={J}, got {flat.size}")
        return cls(n, J, flat, nonneg)

    @property
    def side(self) -> int:
        return 1 << self.J

    @property
    def cell_volume(self) -> float:
        return 2.0 ** (-self.n * self.J)

    @property
    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def total_integral(self) -> float:
        """∫_{Q0} |f|."""
        return float(np.sum(np.abs(self.values))) * self.cell_volume

    def absolute(self) -> 'GridFunction':
        return GridFunction(self.n, self.J, np.abs(self.values), nonneg=True)

    def scaled(self, factor: float) -> 'GridFunction':
        return GridFunction(self.n, self.J, self.values * factor, nonneg=self.nonneg and factor >= 0)


def cell_centers(J: int) -> np.ndarray:
    """Centers (i + 1/2) 2^-J of the cells along one axis."""
    return (np.arange(1 << J, dtype=np.float64) + 0.5) / (1 << J)


def sample_cell_centers(
    n: int,
    J: int,
    fn: Callable[..., np.ndarray],
    nonneg: bool = False
) -> GridFunction:
    """Evaluate ``fn(x1, ..., xn)`` at the cell centers (``ij`` indexing)."""
    axes = np.meshgrid(*([cell_centers(J)] * n), indexing='ij')
    return GridFunction(n, J, fn(*axes), nonneg=nonneg)


# ═══════════════════════════════════════════════════════════════════
# Level arithmetic
# ═══════════════════════════════════════════════════════════════════

def block_sum(a: np.ndarray, width: int) -> np.ndarray:
    """Sum ``a`` over aligned blocks of ``width`` cells per axis."""
    if width == 1:
        return a
    coarse = a.shape[0] // width
    shape: List[int] = []
    for _ in range(a.ndim):
        shape.extend([coarse, width])
    return a.reshape(shape).sum(axis=tuple(range(1, 2 * a.ndim, 2)))


def coarsen(a: np.ndarray) -> np.ndarray:
    """Parent sums of a level array: each parent gets the sum of its 2^n children."""
    return block_sum(a, 2)


def upsample(a: np.ndarray, width: int) -> np.ndarray:
    """Repeat every entry ``width`` times along each axis."""
    out = a
    if width == 1:
        return out
    for axis in range(a.ndim):
        out = np.repeat(out, width, axis=axis)
    return out


# ═══════════════════════════════════════════════════════════════════
# Integral table
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class IntegralTable:
    """
    Per-level integrals: ``absolute[k]`` has shape (2^k,)*n and holds ∫_Q |f|
    for every level-k cube Q; ``signed[k]`` holds ∫_Q f.
    """

    n: int
    J: int
    absolute: Tuple[np.ndarray, ...]
    signed: Tuple[np.ndarray, ...]

    def level_measure(self, level: int) -> float:
        return 2.0 ** (-level * self.n)

    def cube_integral(self, cube: DyadicCube) -> float:
        self._check(cube)
        return float(self.absolute[cube.level][cube.index])

    def cube_signed_integral(self, cube: DyadicCube) -> float:
        self._check(cube)
        return float(self.signed[cube.level][cube.index])

    def averages(self, level: int) -> np.ndarray:
        """f_Q for every cube of ``level``."""
        return self.signed[level] / self.level_measure(level)

    def _check(self, cube: DyadicCube):
        if cube.n != self.n or cube.level > self.J:
            raise ParameterError(f"Cube {cube} is not a cube of the depth-{self.J} tree in dimension {self.n}")


def build_table(f: GridFunction) -> IntegralTable:
    """Build the integral pyramid of ``f`` in O(2^(nJ))."""
    h = f.cell_volume
    absolute = [np.abs(f.values) * h]
    signed = [f.values * h]
    for _ in range(f.J):
        absolute.append(coarsen(absolute[-1]))
        signed.append(coarsen(signed[-1]))
    absolute.reverse()
    signed.reverse()
    for arr in absolute + signed:
        arr.setflags(write=False)
    return IntegralTable(f.n, f.J, tuple(absolute), tuple(signed))


def cube_average(f: GridFunction, cube: DyadicCube, table: Optional[IntegralTable] = None) -> float:
    """f_Q = |Q|^-1 ∫_Q f."""
    table = table or build_table(f)
    return table.cube_signed_integral(cube) / cube.measure


def oscillation_integral(f: GridFunction, cube: DyadicCube, table: Optional[IntegralTable] = None) -> float:
    """∫_Q |f - f_Q|, exact for piecewise-constant f."""
    table = table or build_table(f)
    average = cube_average(f, cube, table)
    block = f.values[cube.cell_slices(f.J)]
    return float(np.sum(np.abs(block - average))) * f.cell_volume


def oscillation_levels(f: GridFunction, table: Optional[IntegralTable] = None) -> List[np.ndarray]:
    """∫_Q |f - f_Q| for every cube, one array per level."""
    table = table or build_table(f)
    h = f.cell_volume
    levels = []
    for level in range(f.J + 1):
        width = 1 << (f.J - level)
        deviation = np.abs(f.values - upsample(table.averages(level), width)) * h
        levels.append(block_sum(deviation, width))
    return levels


# ═══════════════════════════════════════════════════════════════════
# Rearrangement and gradient
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class Rearrangement:
    """
    Decreasing rearrangement of |f| on (0,1].

    f* equals ``fstar[i]`` on (t_{i}, t_{i+1}] with t_i = i 2^(-nJ);
    ``primitive[i]`` is ∫_0^{t_{i+1}} f* and ``fstarstar[i]`` is f**(t_{i+1}).
    """

    breakpoints: np.ndarray
    fstar: np.ndarray
    primitive: np.ndarray
    fstarstar: np.ndarray

    @property
    def step(self) -> float:
        return float(self.breakpoints[0])

    def fstarstar_at(self, t) -> np.ndarray:
        """f**(t) = t^-1 ∫_0^t f*, exact on the step function."""
        t = np.asarray(t, dtype=np.float64)
        if np.any(t <= 0) or np.any(t > 1):
            raise ParameterError("f** is evaluated on (0, 1]")
        h = self.step
        i = np.clip(np.ceil(t / h).astype(np.int64), 1, self.fstar.size)
        before = np.where(i > 1, self.primitive[np.maximum(i - 2, 0)], 0.0)
        return (before + (t - (i - 1) * h) * self.fstar[i - 1]) / t


def rearrangement(f: GridFunction) -> Rearrangement:
    h = f.cell_volume
    fstar = np.sort(np.abs(f.flat))[::-1]
    breakpoints = np.arange(1, fstar.size + 1, dtype=np.float64) * h
    primitive = np.cumsum(fstar) * h
    return Rearrangement(
        breakpoints=breakpoints,
        fstar=fstar,
        primitive=primitive,
        fstarstar=primitive / breakpoints,
    )


def discrete_gradient_l2(f: GridFunction) -> float:
    """‖∇f‖_{L2(Q0)} from periodic forward differences scaled by 2^J."""
    if f.n not in (1, 2):
        raise ParameterError(f"Discrete gradient is defined for n in (1, 2), got n={f.n}")
    scale = float(f.side)
    total = 0.0
    for axis in range(f.n):
        diff = (np.roll(f.values, -1, axis=axis) - f.values) * scale
        total += float(np.sum(diff * diff))
    return math.sqrt(total * f.cell_volume)
