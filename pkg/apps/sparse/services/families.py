"""
Sparse families of dyadic cubes and their canonical-witness verification.

A family is η-sparse when every member Q owns a witness E_Q ⊂ Q with
|E_Q| ≥ η|Q| and the witnesses are pairwise disjoint. For dyadic families the
canonical choice E_Q = Q minus its maximal in-family strict subcubes decides
sparseness exactly.
"""
import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import DyadicCube

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SparseFamily:
    """A set of dyadic cubes of the depth-J tree over Q0 ⊂ ℝ^n."""

    n: int
    J: int
    cubes: Tuple[DyadicCube, ...]
    eta: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise ParameterError(f"Sparseness parameter η must lie in (0, 1), got {self.eta}")
        unique = sorted(set(self.cubes))
        for cube in unique:
            if cube.n != self.n:
                raise ParameterError(f"Cube {cube} does not live in dimension {self.n}")
            if cube.level > self.J:
                raise ParameterError(f"Cube {cube} is deeper than the grid depth {self.J}")
        object.__setattr__(self, 'cubes', tuple(unique))

    @classmethod
    def of(cls, n: int, J: int, cubes: Iterable[DyadicCube], eta: Optional[float] = None) -> 'SparseFamily':
        return cls(n, J, tuple(cubes), float(sparsekit_setting('ETA', eta)))

    @classmethod
    def from_level_masks(
        cls,
        n: int,
        J: int,
        masks: Sequence[np.ndarray],
        eta: Optional[float] = None
    ) -> 'SparseFamily':
        """Build from one boolean array per level marking the member cubes."""
        cubes = [
            DyadicCube(level, tuple(int(m) for m in index))
            for level, mask in enumerate(masks)
            for index in np.argwhere(mask)
        ]
        return cls.of(n, J, cubes, eta)

    def __len__(self) -> int:
        return len(self.cubes)

    def __contains__(self, cube: DyadicCube) -> bool:
        return cube in set(self.cubes)

    def level_masks(self) -> List[np.ndarray]:
        masks = [np.zeros((1 << level,) * self.n, dtype=bool) for level in range(self.J + 1)]
        for cube in self.cubes:
            masks[cube.level][cube.index] = True
        return masks

    def without(self, cube: DyadicCube) -> 'SparseFamily':
        return SparseFamily(self.n, self.J, tuple(c for c in self.cubes if c != cube), self.eta)

    def rows(self) -> List[Tuple[int, ...]]:
        return [(cube.level,) + cube.index for cube in self.cubes]


@dataclass
class SparsenessReport:
    """Outcome of canonical-witness verification."""

    ok: bool
    worst_ratio: float
    eta: float
    ratios: Dict[DyadicCube, float] = field(default_factory=dict)
    witnesses: Optional[Dict[DyadicCube, np.ndarray]] = None

    def as_dict(self) -> Dict:
        return {'ok': self.ok, 'worst_ratio': self.worst_ratio, 'eta': self.eta}


def _cells(cube: DyadicCube, J: int) -> int:
    return 1 << (cube.n * (J - cube.level))


def nearest_ancestors(family: SparseFamily) -> Dict[DyadicCube, Optional[DyadicCube]]:
    """Map each member to its nearest strict ancestor inside the family (None for tops)."""
    members = set(family.cubes)
    nearest: Dict[DyadicCube, Optional[DyadicCube]] = {}
    for cube in family.cubes:
        nearest[cube] = None
        for level in range(cube.level - 1, -1, -1):
            ancestor = cube.ancestor(level)
            if ancestor in members:
                nearest[cube] = ancestor
                break
    return nearest


def verify_sparse(
    family: SparseFamily,
    eta: Optional[float] = None,
    with_witnesses: bool = False
) -> SparsenessReport:
    """
    Check |E_Q| ≥ η|Q| for the canonical witnesses of every member.

    ``eta`` defaults to the family's own η.
    """
    eta = family.eta if eta is None else eta
    nearest = nearest_ancestors(family)
    covered = {cube: 0 for cube in family.cubes}
    for cube, ancestor in nearest.items():
        if ancestor is not None:
            covered[ancestor] += _cells(cube, family.J)

    ratios = {}
    for cube in family.cubes:
        cells = _cells(cube, family.J)
        ratios[cube] = (cells - covered[cube]) / cells

    worst = min(ratios.values()) if ratios else 1.0
    report = SparsenessReport(ok=worst >= eta, worst_ratio=worst, eta=eta, ratios=ratios)

    if with_witnesses:
        report.witnesses = canonical_witnesses(family, nearest)

    if not report.ok:
        logger.debug(f"Family of {len(family)} cubes is not {eta}-sparse: worst ratio {worst}")
    return report


def canonical_witnesses(
    family: SparseFamily,
    nearest: Optional[Dict[DyadicCube, Optional[DyadicCube]]] = None
) -> Dict[DyadicCube, np.ndarray]:
    """E_Q as boolean masks on the finest cells."""
    nearest = nearest or nearest_ancestors(family)
    shape = (1 << family.J,) * family.n
    witnesses = {}
    for cube in family.cubes:
        mask = np.zeros(shape, dtype=bool)
        mask[cube.cell_slices(family.J)] = True
        witnesses[cube] = mask
    for cube, ancestor in nearest.items():
        if ancestor is not None:
            witnesses[ancestor][cube.cell_slices(family.J)] = False
    return witnesses


# ═══════════════════════════════════════════════════════════════════
# CSV exchange: columns level, m1..mn
# ═══════════════════════════════════════════════════════════════════

def family_header(n: int) -> List[str]:
    return ['level'] + [f'm{d + 1}' for d in range(n)]


def dumps_family_csv(family: SparseFamily) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(family_header(family.n))
    writer.writerows(family.rows())
    return buffer.getvalue()


def loads_family_csv(text: str, J: int, eta: Optional[float] = None) -> SparseFamily:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[0] != 'level' or len(header) < 2:
        raise ParameterError(f"Family CSV header must be level,m1..mn, got {header}")
    n = len(header) - 1
    if header != family_header(n):
        raise ParameterError(f"Family CSV header must be {family_header(n)}, got {header}")
    cubes = []
    for row in reader:
        if not row:
            continue
        try:
            level, *index = (int(value) for value in row)
        except ValueError as exc:
            raise ParameterError(f"Malformed family row {row}") from exc
        if len(index) != n:
            raise ParameterError(f"Family row {row} has {len(index)} coordinates, expected {n}")
        cubes.append(DyadicCube(level, tuple(index)))
    return SparseFamily.of(n, J, cubes, eta)


def write_family_csv(family: SparseFamily, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_family_csv(family), encoding='utf-8')


def read_family_csv(path: Union[str, Path], J: int, eta: Optional[float] = None) -> SparseFamily:
    return loads_family_csv(Path(path).read_text(encoding='utf-8'), J, eta)
