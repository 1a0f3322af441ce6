"""
Deterministic probe corpora.

Every generator returns labeled grid functions for one (n, J); randomness only
enters through ``np.random.default_rng(seed)``.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import GridFunction, cell_centers, sample_cell_centers
from apps.spectral.services.haar import haar_probe

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FamilyMember:
    """A probe with the norm it is divided by (1.0 for unnormalized probes)."""

    label: str
    f: GridFunction
    norm: float = 1.0
    normalization: str = 'none'

    @property
    def normalized(self) -> GridFunction:
        return self.f if self.norm == 1.0 else self.f.scaled(1.0 / self.norm)


@dataclass(frozen=True, eq=False)
class FunctionFamily:
    label: str
    members: List[FamilyMember]
    descriptor: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        shapes = {(m.f.n, m.f.J) for m in self.members}
        if len(shapes) > 1:
            raise ParameterError(f"Family {self.label} mixes grids {sorted(shapes)}")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def n(self) -> int:
        return self.members[0].f.n

    @property
    def J(self) -> int:
        return self.members[0].f.J

    def normalized_by(self, norm: Callable[[GridFunction], float], name: str) -> 'FunctionFamily':
        """Copy with every member tagged by ``norm``; zero members are dropped."""
        members = []
        for member in self.members:
            value = float(norm(member.f))
            if value > 0.0:
                members.append(FamilyMember(member.label, member.f, value, name))
        return FunctionFamily(self.label, members, {**self.descriptor, 'normalization': name})


@dataclass(frozen=True)
class CorpusSpec:
    generator: str
    n: int
    J: int
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None


Probe = Tuple[str, GridFunction]


# ═══════════════════════════════════════════════════════════════════
# Generators
# ═══════════════════════════════════════════════════════════════════

def _distance(n: int, J: int, center) -> np.ndarray:
    axes = np.meshgrid(*([cell_centers(J)] * n), indexing='ij')
    return np.sqrt(sum((axis - c) ** 2 for axis, c in zip(axes, center)))


def _unit_mass(values: np.ndarray, n: int, J: int) -> GridFunction:
    total = float(np.sum(values)) * 2.0 ** (-n * J)
    return GridFunction(n, J, values / total, nonneg=True)


def _bump(t: np.ndarray) -> np.ndarray:
    """(1 - t²)² on |t| < 1, zero outside."""
    return np.where(np.abs(t) < 1.0, (1.0 - t * t) ** 2, 0.0)


def _center(n: int, params: Dict[str, Any]):
    return tuple(params.get('center', (0.5,) * n))


def constant(n: int, J: int, rng, **params) -> List[Probe]:
    return [('constant', GridFunction(n, J, np.full((1 << J,) * n, float(params.get('value', 1.0))), nonneg=True))]


def atom(n: int, J: int, rng, **params) -> List[Probe]:
    """Unit mass on one finest cell."""
    index = tuple(params.get('index', (0,) * n))
    values = np.zeros((1 << J,) * n)
    values[index] = 2.0 ** (n * J)
    return [('atom', GridFunction(n, J, values, nonneg=True))]


def cube_indicators(n: int, J: int, rng, **params) -> List[Probe]:
    """Unit-mass indicators of the corner cube of every level 0..J."""
    probes = []
    for level in range(J + 1):
        values = np.zeros((1 << J,) * n)
        width = 1 << (J - level)
        values[(slice(0, width),) * n] = 2.0 ** (n * level)
        probes.append((f'cube_{level}', GridFunction(n, J, values, nonneg=True)))
    return probes


def uniform(n: int, J: int, rng, **params) -> List[Probe]:
    count = int(params.get('count', 1))
    return [
        (f'uniform_{i}', GridFunction(n, J, rng.uniform(0.0, 1.0, (1 << J,) * n), nonneg=True))
        for i in range(count)
    ]


def morrey_extremal(n: int, J: int, rng, **params) -> List[Probe]:
    """|x - x0|^{-n/p} with the distance floored at half a cell."""
    p = float(params.get('p', 1.0))
    distance = np.maximum(_distance(n, J, _center(n, params)), 0.5 * 2.0 ** -J)
    return [(f'morrey_extremal_p{p}', GridFunction(n, J, distance ** (-n / p), nonneg=True))]


def mollified_atom(n: int, J: int, rng, **params) -> List[Probe]:
    """L¹-normalized bumps of radius ε = 2^{-m}, m = 1..J (or the given scales)."""
    scales = params.get('scales') or [2.0 ** -m for m in range(1, J + 1)]
    distance = _distance(n, J, _center(n, params))
    probes = []
    for eps in scales:
        values = _bump(distance / eps)
        if not np.any(values > 0.0):
            continue
        probes.append((f'mollified_atom_{eps}', _unit_mass(values, n, J)))
    return probes


def mollified_segment(n: int, J: int, rng, **params) -> List[Probe]:
    """Unit mass spread in the ε-neighborhood of the segment [1/4, 3/4] × {1/2}."""
    if n != 2:
        raise ParameterError(f"The segment generator lives in n = 2, got n={n}")
    scales = params.get('scales') or [2.0 ** -m for m in range(1, J + 1)]
    x, y = np.meshgrid(cell_centers(J), cell_centers(J), indexing='ij')
    dx = np.maximum(np.maximum(0.25 - x, x - 0.75), 0.0)
    distance = np.sqrt(dx * dx + (y - 0.5) ** 2)
    probes = []
    for eps in scales:
        values = _bump(distance / eps)
        if not np.any(values > 0.0):
            continue
        probes.append((f'mollified_segment_{eps}', _unit_mass(values, n, J)))
    return probes


def haar_atoms(n: int, J: int, rng, **params) -> List[Probe]:
    """g_K = 2^{(2 - n/2)K} times the L²-normalized Haar atom at level K."""
    return [(f'haar_{K}', haar_probe(n, J, K)) for K in range(J)]


def sine(n: int, J: int, rng, **params) -> List[Probe]:
    cycles = int(params.get('cycles', 1))
    f = sample_cell_centers(n, J, lambda *axes: np.prod([np.sin(2.0 * np.pi * cycles * a) for a in axes], axis=0))
    return [(f'sine_{cycles}', f)]


def gaussian(n: int, J: int, rng, **params) -> List[Probe]:
    sigma = float(params.get('sigma', 0.1))
    distance = _distance(n, J, _center(n, params))
    return [(f'gaussian_{sigma}', GridFunction(n, J, np.exp(-0.5 * (distance / sigma) ** 2), nonneg=True))]


GENERATORS: Dict[str, Callable[..., List[Probe]]] = {
    'constant': constant,
    'atom': atom,
    'cube_indicators': cube_indicators,
    'uniform': uniform,
    'morrey_extremal': morrey_extremal,
    'mollified_atom': mollified_atom,
    'mollified_segment': mollified_segment,
    'haar_atom': haar_atoms,
    'sine': sine,
    'gaussian': gaussian,
}


def corpus_generate(spec: CorpusSpec) -> FunctionFamily:
    try:
        generator = GENERATORS[spec.generator]
    except KeyError:
        raise ParameterError(f"Unknown generator '{spec.generator}', expected one of {sorted(GENERATORS)}")
    seed = int(sparsekit_setting('DEFAULT_SEED', spec.seed))
    rng = np.random.default_rng(seed)
    probes = generator(spec.n, spec.J, rng, **spec.params)
    if not probes:
        raise ParameterError(f"Generator '{spec.generator}' produced no members for n={spec.n}, J={spec.J}")
    logger.debug(f"Corpus {spec.generator}: n={spec.n}, J={spec.J}, seed={seed}, size={len(probes)}")
    return FunctionFamily(
        label=spec.generator,
        members=[FamilyMember(label, f) for label, f in probes],
        descriptor={'generator': spec.generator, 'n': spec.n, 'J': spec.J, 'params': dict(spec.params), 'seed': seed},
    )


def mixed_corpus(size: int, seed: Optional[int] = None, max_depth: int = 6) -> List[GridFunction]:
    """``size`` grids with n ∈ {1, 2} and J ≤ ``max_depth`` drawn from several generators."""
    seed = int(sparsekit_setting('DEFAULT_SEED', seed))
    rng = np.random.default_rng(seed)
    names = ['uniform', 'atom', 'gaussian', 'morrey_extremal', 'mollified_atom', 'constant']
    corpus: List[GridFunction] = []
    while len(corpus) < size:
        n = int(rng.integers(1, 3))
        J = int(rng.integers(1, (max_depth if n == 1 else min(max_depth, 5)) + 1))
        name = names[int(rng.integers(len(names)))]
        params: Dict[str, Any] = {}
        if name == 'atom':
            params['index'] = tuple(int(i) for i in rng.integers(0, 1 << J, size=n))
        elif name == 'gaussian':
            params['sigma'] = float(rng.uniform(0.05, 0.3))
        elif name == 'morrey_extremal':
            params['p'] = float(rng.uniform(1.0, 3.0))
        probes = GENERATORS[name](n, J, rng, **params)
        corpus.extend(f for _, f in probes)
    return corpus[:size]
