"""
Orthogonal Haar expansion of grid functions.

The wavelet h_{Q,ε} equals Π_i (-1)^{ε_i o_i} on the child of Q with offset
o ∈ {0,1}^n, for ε ∈ {0,1}^n without the zero vector. Coefficients are
normalized as λ_{Q,ε} = |Q|^{-1} ∫ f h_{Q,ε}, so f = mean + Σ λ h and
‖f‖₂² = mean² + Σ λ² |Q|.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import DyadicCube, GridFunction, block_sum, upsample
from apps.sequences.services.sequences import BlockSequence

logger = logging.getLogger(__name__)

Signature = Tuple[int, ...]


def signatures(n: int) -> List[Signature]:
    return [eps for eps in itertools.product((0, 1), repeat=n) if any(eps)]


def sign_pattern(eps: Signature) -> np.ndarray:
    """±1 on the 2^n children, indexed by child offset."""
    n = len(eps)
    offsets = np.indices((2,) * n)
    parity = sum(e * offsets[i] for i, e in enumerate(eps))
    return np.where(np.asarray(parity) % 2 == 0, 1.0, -1.0)


def level_averages(f: GridFunction, level: int) -> np.ndarray:
    width = 1 << (f.J - level)
    return block_sum(f.values, width) / float(width) ** f.n


def _children_last(a: np.ndarray, n: int) -> np.ndarray:
    """Reshape a level-(N+1) array to (2^N,)*n + (2,)*n."""
    parents = a.shape[0] // 2
    split = a.reshape([d for _ in range(n) for d in (parents, 2)])
    return split.transpose(list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2)))


@dataclass(frozen=True, eq=False)
class HaarCoefficients:
    n: int
    J: int
    mean: float
    levels: List[Dict[Signature, np.ndarray]]

    def energy(self) -> float:
        """mean² + Σ λ² |Q|."""
        total = self.mean ** 2
        for N, level in enumerate(self.levels):
            volume = 2.0 ** (-self.n * N)
            total += sum(float(np.sum(c ** 2)) for c in level.values()) * volume
        return total

    def as_block_sequence(self) -> BlockSequence:
        """One scale per level, all signatures and cubes flattened together."""
        return BlockSequence([
            np.concatenate([level[eps].ravel() for eps in signatures(self.n)])
            for level in self.levels
        ])


def haar_coeffs(f: GridFunction) -> HaarCoefficients:
    levels = []
    for N in range(f.J):
        children = _children_last(level_averages(f, N + 1), f.n)
        axes = (list(range(f.n, 2 * f.n)), list(range(f.n)))
        levels.append({
            eps: np.tensordot(children, sign_pattern(eps), axes=axes) / 2.0 ** f.n
            for eps in signatures(f.n)
        })
    mean = float(np.mean(f.values))
    logger.debug(f"Haar expansion: n={f.n}, J={f.J}, levels={len(levels)}")
    return HaarCoefficients(f.n, f.J, mean, levels)


def haar_synthesize(coeffs: HaarCoefficients) -> GridFunction:
    values = np.full((1 << coeffs.J,) * coeffs.n, coeffs.mean)
    for N, level in enumerate(coeffs.levels):
        child_width = 1 << (coeffs.J - N - 1)
        for eps, lam in level.items():
            pattern = np.kron(lam, sign_pattern(eps))
            values = values + upsample(pattern, child_width)
    return GridFunction(coeffs.n, coeffs.J, values)


def haar_atom(
    n: int,
    J: int,
    level: int,
    index: Sequence[int],
    eps: Optional[Signature] = None
) -> GridFunction:
    """h_{Q,ε} for the cube Q = (level, index); ε defaults to (1, 0, .., 0)."""
    if not 0 <= level < J:
        raise ParameterError(f"A Haar atom needs 0 <= level < J, got level={level}, J={J}")
    eps = tuple(eps) if eps is not None else (1,) + (0,) * (n - 1)
    if len(eps) != n or eps not in signatures(n):
        raise ParameterError(f"Signature {eps} is not a nonzero element of {{0,1}}^{n}")
    cube = DyadicCube(level, tuple(index))
    values = np.zeros((1 << J,) * n)
    values[cube.cell_slices(J)] = upsample(sign_pattern(eps), 1 << (J - level - 1))
    return GridFunction(n, J, values)


def haar_probe(n: int, J: int, K: int) -> GridFunction:
    """2^{2K} h_{Q,ε} on the corner cube of level K."""
    return haar_atom(n, J, K, (0,) * n).scaled(4.0 ** K)
