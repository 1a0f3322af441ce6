"""
Decay functions Ψ tabulated on 0..N_max and their certificates.

A decay is positive and non-increasing. It is admissible when
Σ_{r≤N} (2^r Ψ(r))² stays within a bounded multiple of (2^N Ψ(N))², and
doubling when Ψ(cN)/Ψ(N) stays bounded below.
"""
import csv
import io
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.reports import dumps_csv

logger = logging.getLogger(__name__)

DECAY_HEADER = ['N', 'psi']


@dataclass(frozen=True)
class DecayCertificate:
    admissible: bool
    admissibility_constant: float
    doubling: bool
    doubling_constant: float
    doubling_c: int
    decaying: bool
    tail_ratio: float
    excluded_exponential: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return {
            'admissible': self.admissible,
            'admissibility_constant': self.admissibility_constant,
            'doubling': self.doubling,
            'doubling_constant': self.doubling_constant,
            'doubling_c': self.doubling_c,
            'decaying': self.decaying,
            'tail_ratio': self.tail_ratio,
            'excluded_exponential': self.excluded_exponential,
        }


@dataclass(frozen=True, eq=False)
class Decay:
    """Ψ(0), .., Ψ(N_max) with a descriptor of how the table was produced."""

    name: str
    values: np.ndarray
    descriptor: Dict[str, Any] = field(default_factory=dict)
    certificate: Optional[DecayCertificate] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 2:
            raise ParameterError("A decay table needs at least Ψ(0) and Ψ(1)")
        if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
            raise ParameterError(f"Decay {self.name} must be finite and strictly positive")
        if np.any(np.diff(values) > 0.0):
            N = int(np.argmax(np.diff(values) > 0.0))
            raise ParameterError(f"Decay {self.name} increases between N={N} and N={N + 1}")
        object.__setattr__(self, 'values', values)

    @property
    def n_max(self) -> int:
        return self.values.size - 1

    def __call__(self, N):
        """Ψ(N) for integer N (scalar or array) within the table."""
        index = np.asarray(N)
        if np.any(index < 0) or np.any(index > self.n_max):
            raise ParameterError(f"Decay {self.name} is tabulated on 0..{self.n_max}, asked for {N}")
        result = self.values[index]
        return float(result) if np.ndim(result) == 0 else result

    def squared(self) -> np.ndarray:
        return self.values ** 2

    def truncated(self, n_max: int) -> 'Decay':
        if n_max > self.n_max:
            raise ParameterError(f"Decay {self.name} has no values beyond N={self.n_max}")
        return replace(self, values=self.values[:n_max + 1], certificate=None)

    def as_dict(self) -> Dict[str, Any]:
        payload = {'name': self.name, 'n_max': self.n_max, 'descriptor': self.descriptor}
        if self.certificate is not None:
            payload['certificate'] = self.certificate.as_dict()
        return payload


# ═══════════════════════════════════════════════════════════════════
# Constructors
# ═══════════════════════════════════════════════════════════════════

def _tabulate(name: str, fn: Callable[[np.ndarray], np.ndarray], n_max: Optional[int], **descriptor) -> Decay:
    n_max = sparsekit_setting('DECAY_NMAX', n_max)
    N = np.arange(n_max + 1, dtype=np.float64)
    return Decay(name, fn(N), {'kind': name, **descriptor})


def power_decay(beta: float, n_max: Optional[int] = None) -> Decay:
    """t^{-β} with Ψ(0) := Ψ(1)."""
    if beta <= 0.0:
        raise ParameterError(f"Power decay needs β > 0, got {beta}")
    return _tabulate('power', lambda N: np.maximum(N, 1.0) ** -beta, n_max, beta=beta)


def shifted_power_decay(beta: float, n_max: Optional[int] = None) -> Decay:
    """(1 + t)^{-β}."""
    if beta <= 0.0:
        raise ParameterError(f"Shifted power decay needs β > 0, got {beta}")
    return _tabulate('shifted_power', lambda N: (1.0 + N) ** -beta, n_max, beta=beta)


def exponential_decay(C: float, n_max: Optional[int] = None) -> Decay:
    """2^{-Ct}."""
    if C <= 0.0:
        raise ParameterError(f"Exponential decay needs C > 0, got {C}")
    return _tabulate('exponential', lambda N: 2.0 ** (-C * N), n_max, C=C)


def log_power_decay(beta: float, n_max: Optional[int] = None) -> Decay:
    """(1 + log2(1 + t))^{-β}."""
    if beta <= 0.0:
        raise ParameterError(f"Log-power decay needs β > 0, got {beta}")
    return _tabulate('log_power', lambda N: (1.0 + np.log2(1.0 + N)) ** -beta, n_max, beta=beta)


def tabulated_decay(values, name: str = 'tabulated') -> Decay:
    return Decay(name, np.asarray(values, dtype=np.float64), {'kind': 'tabulated'})


DECAY_KINDS = {
    'power': power_decay,
    'shifted_power': shifted_power_decay,
    'exponential': exponential_decay,
    'log_power': log_power_decay,
}


def make_decay(kind: str, parameter: float, n_max: Optional[int] = None) -> Decay:
    try:
        constructor = DECAY_KINDS[kind]
    except KeyError:
        raise ParameterError(f"Unknown decay kind '{kind}', expected one of {sorted(DECAY_KINDS)}")
    return constructor(parameter, n_max)


# ═══════════════════════════════════════════════════════════════════
# Certification
# ═══════════════════════════════════════════════════════════════════

def admissibility_profile(psi: Decay) -> np.ndarray:
    """Σ_{r≤N} (2^r Ψ(r))² / (2^N Ψ(N))² for every N of the table."""
    squared = psi.squared()
    profile = np.ones(squared.size)
    for N in range(1, squared.size):
        profile[N] = 1.0 + profile[N - 1] * squared[N - 1] / (4.0 * squared[N])
    return profile


def doubling_profile(psi: Decay, c: int) -> np.ndarray:
    """Ψ(cN)/Ψ(N) for N = 1..⌊N_max/c⌋."""
    N = np.arange(1, psi.n_max // c + 1)
    return psi.values[c * N] / psi.values[N]


def decay_certify(psi: Decay, n_max: Optional[int] = None, c: Optional[int] = None) -> Decay:
    """Attach admissibility, doubling and tail certificates to ``psi`` (truncated to ``n_max``)."""
    c = int(sparsekit_setting('DOUBLING_C', c))
    if c < 2:
        raise ParameterError(f"The doubling test needs an integer c >= 2, got {c}")
    if n_max is not None:
        psi = psi.truncated(n_max)

    admissibility = float(admissibility_profile(psi).max())
    doubling_ratios = doubling_profile(psi, c)
    doubling = float(doubling_ratios.min()) if doubling_ratios.size else 1.0
    tail_ratio = float(psi.values[-1] / psi.values[1])
    excluded = psi.descriptor.get('kind') == 'exponential' and psi.descriptor.get('C', 0.0) >= 1.0

    certificate = DecayCertificate(
        admissible=admissibility <= sparsekit_setting('ADMISSIBILITY_BOUND') and not excluded,
        admissibility_constant=admissibility,
        doubling=doubling >= sparsekit_setting('DOUBLING_FLOOR'),
        doubling_constant=doubling,
        doubling_c=c,
        decaying=tail_ratio <= sparsekit_setting('DECAY_TAIL_RATIO'),
        tail_ratio=tail_ratio,
        excluded_exponential=excluded,
    )
    logger.debug(f"Decay {psi.name} certified: {certificate}")
    return replace(psi, certificate=certificate)


def require_certified(psi: Decay, admissible: bool = False, doubling: bool = False) -> Decay:
    """Certify on demand and refuse when a requested property fails."""
    if psi.certificate is None:
        psi = decay_certify(psi)
    if admissible and not psi.certificate.admissible:
        raise ParameterError(
            f"Decay {psi.name} is not admissible (constant {psi.certificate.admissibility_constant})"
        )
    if doubling and not psi.certificate.doubling:
        raise ParameterError(f"Decay {psi.name} is not doubling (min ratio {psi.certificate.doubling_constant})")
    return psi


# ═══════════════════════════════════════════════════════════════════
# CSV (N, psi)
# ═══════════════════════════════════════════════════════════════════

def dumps_decay_csv(psi: Decay) -> str:
    return dumps_csv(DECAY_HEADER, ((N, float(value)) for N, value in enumerate(psi.values)))


def loads_decay_csv(text: str, name: str = 'tabulated') -> Decay:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != DECAY_HEADER:
        raise ParameterError(f"Decay CSV header must be {DECAY_HEADER}, got {header}")
    values = []
    for row in reader:
        if not row:
            continue
        try:
            N, value = int(row[0]), float(row[1])
        except (ValueError, IndexError) as exc:
            raise ParameterError(f"Malformed decay row {row}") from exc
        if N != len(values):
            raise ParameterError(f"Decay CSV rows must list N = 0, 1, 2, .. in order; got N={N}")
        values.append(value)
    return tabulated_decay(values, name)


def write_decay_csv(psi: Decay, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_decay_csv(psi), encoding='utf-8')


def read_decay_csv(path: Union[str, Path]) -> Decay:
    path = Path(path)
    return loads_decay_csv(path.read_text(encoding='utf-8'), name=path.stem)


def series_diverges(phi: Decay, ratio: float = 0.1) -> bool:
    """Flag Σ Φ(j) as divergent when N_max Φ(N_max) is a fixed share of the partial sum."""
    return bool(phi.n_max * phi.values[-1] >= ratio * float(np.sum(phi.values)))

