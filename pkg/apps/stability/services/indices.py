"""
Sparse indices s_N and the spaces built on them.

s_N(f) is the SR_{2n/(n+2),2} supremum restricted to cubes of depth >= N - 1,
so the score is c(Q) = |Q|^{1/n - 1/2} ∫_Q |f|. Because a union of sparse
families on disjoint roots is sparse,

    s_N(f)² = Σ over depth-(N-1) cubes P of sup_F Σ_{Q ∈ F, Q ⊆ P} c(Q)²,

and every s_N is read off one ``SparseSupremum`` of the whole tree.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.grid import GridFunction, IntegralTable, build_table
from apps.grid.services.reports import CertifiedInterval, dumps_csv
from apps.maximal.services.maximal import weighted_levels
from apps.sequences.services.decay import Decay, decay_certify, require_certified, tabulated_decay
from apps.sparse.services.domination import SRParams
from apps.sparse.services.program import exact_program
from apps.sparse.services.sr import SparseSupremum, sr_scores
from apps.stability.services.corpus import FunctionFamily

logger = logging.getLogger(__name__)

INDEX_Q = 2.0
INDEX_HEADER = ['N', 'lower', 'upper']


def index_exponent(n: int) -> float:
    """2n/(n+2): the Lebesgue exponent of the index scale."""
    return 2.0 * n / (n + 2.0)


def index_scores(f: GridFunction, table: Optional[IntegralTable] = None) -> List[np.ndarray]:
    """
    c(Q) per level. For n >= 2 this is sr_scores of SR_{2n/(n+2),2}; at n = 1 the
    exponent 2/3 lies below 1 and the weight |Q|^{1/2} is applied directly.
    """
    table = table or build_table(f)
    if f.n >= 2:
        return sr_scores(f, SRParams(index_exponent(f.n), INDEX_Q), table)
    return weighted_levels(table.absolute, f.n, 0.5 - 1.0 / f.n, 0.0)


@dataclass(frozen=True, eq=False)
class SparseIndexProfile:
    """s_N intervals for N = 1..len(intervals); ``truncated[N-1]`` marks N - 1 > J."""

    n: int
    J: int
    intervals: List[CertifiedInterval]
    truncated: List[bool]
    routes: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.intervals)

    def __getitem__(self, N: int) -> CertifiedInterval:
        if not 1 <= N <= self.n_max:
            raise ParameterError(f"Index N={N} outside the profile 1..{self.n_max}")
        return self.intervals[N - 1]

    def lower(self) -> np.ndarray:
        return np.array([interval.lower for interval in self.intervals])

    def upper(self) -> np.ndarray:
        return np.array([interval.upper for interval in self.intervals])

    def rows(self):
        return [(N, interval.lower, interval.upper) for N, interval in enumerate(self.intervals, start=1)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'J': self.J,
            'indices': [{'N': N, 'lower': lower, 'upper': upper} for N, lower, upper in self.rows()],
            'truncated': any(self.truncated),
            'routes': self.routes,
        }


def sparse_index_profile(
    f: GridFunction,
    n_max: Optional[int] = None,
    eta: Optional[float] = None,
    refinement: Optional[int] = None
) -> SparseIndexProfile:
    """
    Certified s_1..s_{n_max} (default n_max = J + 1).

    From N = 2 on, each bound is capped by the previous one since s_N is
    non-increasing; s_1 is left exactly as the SR interval.
    """
    n_max = f.J + 1 if n_max is None else int(n_max)
    if n_max < 1:
        raise ParameterError(f"Sparse indices start at N = 1, got n_max={n_max}")

    supremum = SparseSupremum.build(index_scores(f), f.n, INDEX_Q, eta, refinement)
    intervals: List[CertifiedInterval] = []
    truncated: List[bool] = []
    for N in range(1, n_max + 1):
        if N - 1 > f.J:
            intervals.append(CertifiedInterval(0.0, 0.0))
            truncated.append(True)
            continue
        interval = supremum.interval(N - 1)
        if intervals:
            previous = intervals[-1]
            interval = CertifiedInterval(min(interval.lower, previous.lower), min(interval.upper, previous.upper))
        intervals.append(interval)
        truncated.append(False)

    if any(truncated):
        logger.warning(f"Sparse indices beyond N={f.J + 1} vanish on a depth-{f.J} tree; flagged as truncated")
    routes = {
        'lower': 'budget_program',
        'upper': 'maximal_or_full_sum',
        'eta': supremum.eta,
        'exact': supremum.program.exact,
    }
    logger.debug(f"Sparse index profile: n={f.n}, J={f.J}, N=1..{n_max}")
    return SparseIndexProfile(f.n, f.J, intervals, truncated, routes)


def sparse_index(
    f: GridFunction,
    N: int,
    eta: Optional[float] = None,
    refinement: Optional[int] = None
) -> CertifiedInterval:
    if N < 1:
        raise ParameterError(f"Sparse indices start at N = 1, got N={N}")
    return sparse_index_profile(f, N, eta, refinement)[N]


def dumps_index_csv(profile: SparseIndexProfile) -> str:
    return dumps_csv(INDEX_HEADER, profile.rows())


# ═══════════════════════════════════════════════════════════════════
# Exhaustive oracles
# ═══════════════════════════════════════════════════════════════════

def subtree_exact(
    f: GridFunction,
    N: int,
    eta: Optional[float] = None,
    max_cubes: Optional[int] = None
) -> np.ndarray:
    """Exact squared SR supremum inside every depth-(N-1) cube (small trees only)."""
    if not 1 <= N <= f.J + 1:
        raise ParameterError(f"Exact subtree values need 1 <= N <= J + 1 = {f.J + 1}, got N={N}")
    powered = [level ** INDEX_Q for level in index_scores(f)]
    return exact_program(powered, f.n, eta, max_cubes).subtree_best(N - 1)


def sparse_index_bruteforce(
    f: GridFunction,
    N: int,
    eta: Optional[float] = None,
    max_cubes: Optional[int] = None
) -> float:
    """s_N as the ℓ² sum of the exact per-subtree suprema."""
    return math.sqrt(float(np.sum(subtree_exact(f, N, eta, max_cubes))))


def sparse_index_decoupled(
    f: GridFunction,
    N: int,
    eta: Optional[float] = None,
    max_cubes: Optional[int] = None
) -> float:
    """s_N as one exact supremum over the whole tree with the levels above N - 1 zeroed."""
    if not 1 <= N <= f.J + 1:
        raise ParameterError(f"Exact indices need 1 <= N <= J + 1 = {f.J + 1}, got N={N}")
    powered = [level ** INDEX_Q for level in index_scores(f)]
    for level in range(N - 1):
        powered[level] = np.zeros_like(powered[level])
    return math.sqrt(exact_program(powered, f.n, eta, max_cubes).total())


def full_level_bound(f: GridFunction, N: int) -> float:
    """(Σ_{k ≥ N-1} Σ_{Q ∈ D_k} c(Q)²)^{1/2}: every cube of depth >= N - 1 at once."""
    if N < 1:
        raise ParameterError(f"Sparse indices start at N = 1, got N={N}")
    scores = index_scores(f)
    return math.sqrt(sum(float(np.sum(level ** 2)) for level in scores[N - 1:]))


# ═══════════════════════════════════════════════════════════════════
# Space indices, extracted decays, S_Ψ
# ═══════════════════════════════════════════════════════════════════

def _require_members(family: FunctionFamily):
    if not len(family):
        raise ParameterError(f"Family {family.label} has no members")


def space_index(family: FunctionFamily, N: int, eta: Optional[float] = None) -> float:
    """
    Probe supremum: the largest certified s_N upper bound over the normalized
    family. A finite family only samples the unit ball of the space.
    """
    _require_members(family)
    best = 0.0
    for member in family.members:
        best = max(best, sparse_index(member.f, N, eta).upper / member.norm)
    return best


def family_profile(family: FunctionFamily, eta: Optional[float] = None) -> np.ndarray:
    """Row N - 1 holds the largest normalized s_N upper bound, N = 1..J + 1."""
    _require_members(family)
    uppers = [
        sparse_index_profile(member.f, family.J + 1, eta).upper() / member.norm
        for member in family.members
    ]
    return np.max(np.vstack(uppers), axis=0)


def extract_decay(family: FunctionFamily, eta: Optional[float] = None) -> Decay:
    """Ψ(N) = max over members of s_N for N = 1..J + 1 with Ψ(0) := Ψ(1), certified."""
    profile = family_profile(family, eta)
    if not np.all(profile > 0.0):
        raise ParameterError(f"Family {family.label} has a vanishing sparse index; no decay can be extracted")
    values = np.concatenate([profile[:1], profile])
    psi = tabulated_decay(values, name=f'extracted_{family.label}')
    psi = decay_certify(psi)
    logger.info(
        f"Extracted decay from {len(family)} members of {family.label}: "
        f"tail ratio {psi.certificate.tail_ratio:.4g}, decaying={psi.certificate.decaying}"
    )
    return psi


def spsi_norm(
    f: GridFunction,
    psi: Decay,
    eta: Optional[float] = None,
    profile: Optional[SparseIndexProfile] = None
) -> CertifiedInterval:
    """[max_N lower_N/Ψ(N), max_N upper_N/Ψ(N)] over N = 1..min(J + 1, N_max of Ψ)."""
    psi = require_certified(psi)
    n_max = min(f.J + 1, psi.n_max)
    profile = profile or sparse_index_profile(f, n_max, eta)
    weights = psi.values[1:n_max + 1]
    return CertifiedInterval(
        float(np.max(profile.lower()[:n_max] / weights)),
        float(np.max(profile.upper()[:n_max] / weights)),
    )
