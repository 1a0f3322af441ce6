"""
Sequence spaces v_Ψ and t_Ψ, K-functionals of weighted ℓ₁ pairs and the
extrapolation supremum.

Per-scale data λ_{k,l} is held as one array per scale k; scalar sequences
a_j are the special case of one entry per scale.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.sequences.services.decay import Decay, require_certified, series_diverges

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlockSequence:
    """λ_{k,l} for k = 0..j_max; ``scales[k]`` holds the coefficients of scale k."""

    scales: List[np.ndarray]

    def __post_init__(self):
        if not self.scales:
            raise ParameterError("A block sequence needs at least one scale")
        object.__setattr__(self, 'scales', [np.atleast_1d(np.asarray(s, dtype=np.float64)) for s in self.scales])

    @classmethod
    def from_scalars(cls, values: Sequence[float]) -> 'BlockSequence':
        return cls([np.array([float(v)]) for v in values])

    @property
    def j_max(self) -> int:
        return len(self.scales) - 1

    def sup_per_scale(self) -> np.ndarray:
        return np.array([float(np.max(np.abs(s))) if s.size else 0.0 for s in self.scales])

    def energy_per_scale(self) -> np.ndarray:
        return np.array([float(np.sum(s ** 2)) for s in self.scales])


def _tail_sums(terms: np.ndarray) -> np.ndarray:
    """Σ_{k≥N} terms[k] for every N."""
    return np.cumsum(terms[::-1])[::-1]


def _decay_window(psi: Decay, j_max: int) -> np.ndarray:
    if psi.n_max < j_max:
        raise ParameterError(f"Decay {psi.name} is tabulated up to {psi.n_max}, the sequence reaches scale {j_max}")
    return psi.squared()[:j_max + 1]


def vpsi_profile(seq: BlockSequence, psi: Decay) -> np.ndarray:
    """Ψ(N)^{-2} Σ_{k≥N} 2^{-2k} sup_l |λ_{kl}| for N = 0..j_max."""
    k = np.arange(seq.j_max + 1)
    return _tail_sums(4.0 ** -k * seq.sup_per_scale()) / _decay_window(psi, seq.j_max)


def tpsi_profile(seq: BlockSequence, psi: Decay, n: int = 2) -> np.ndarray:
    """Ψ(N)^{-2} Σ_{k≥N} 2^{k(-2-n)} Σ_l |λ_{kl}|² for N = 0..j_max (squared t_Ψ ratios)."""
    k = np.arange(seq.j_max + 1)
    return _tail_sums(2.0 ** (-(2 + n) * k) * seq.energy_per_scale()) / _decay_window(psi, seq.j_max)


def vpsi_seq(seq: BlockSequence, psi: Decay) -> float:
    return float(vpsi_profile(seq, psi).max())


def tpsi_seq(seq: BlockSequence, psi: Decay, n: int = 2) -> float:
    return float(np.sqrt(tpsi_profile(seq, psi, n).max()))


# ═══════════════════════════════════════════════════════════════════
# K-functional and extrapolation
# ═══════════════════════════════════════════════════════════════════

def k_functional(t: float, a: Sequence[float], w0: Sequence[float], w1: Sequence[float]) -> float:
    """
    K(t, a; ℓ₁(w0), ℓ₁(w1)) = Σ_j min(w0_j, t w1_j) |a_j|.

    Coordinatewise splitting is optimal since both norms are additive over coordinates.
    """
    if t <= 0.0:
        raise ParameterError(f"K-functional needs t > 0, got {t}")
    a, w0, w1 = (np.asarray(x, dtype=np.float64) for x in (a, w0, w1))
    if not (a.shape == w0.shape == w1.shape):
        raise ParameterError(f"Sequence and weights disagree in length: {a.shape}, {w0.shape}, {w1.shape}")
    if np.any(w0 <= 0.0) or np.any(w1 <= 0.0):
        raise ParameterError("K-functional weights must be positive")
    return float(np.sum(np.minimum(w0, t * w1) * np.abs(a)))


def besov_weights(length: int, s: float):
    """Weights of the pair (ℓ₁^{-2}, ℓ₁^{s}): 2^{-2j} and 2^{sj}."""
    j = np.arange(length, dtype=np.float64)
    return 4.0 ** -j, 2.0 ** (s * j)


def extrapolation_profile(a: Sequence[float], psi: Decay, s: float = 0.0) -> np.ndarray:
    """K(2^{-2N}, a)/Ψ(N)² for N = 0..N_max of the decay."""
    a = np.asarray(a, dtype=np.float64)
    w0, w1 = besov_weights(a.size, s)
    return np.array([
        k_functional(4.0 ** -N, a, w0, w1) / psi.values[N] ** 2
        for N in range(psi.n_max + 1)
    ])


def extrapolation_norm(a: Sequence[float], psi: Decay, s: float = 0.0) -> float:
    """sup_N K(2^{-2N}, a; 2^{-2j}, 2^{sj}) / Ψ(N)² over the tabulated range."""
    psi = require_certified(psi, admissible=True, doubling=True)
    return float(extrapolation_profile(a, psi, s).max())


# ═══════════════════════════════════════════════════════════════════
# Counterexamples separating V_Ψ and T_Ψ
# ═══════════════════════════════════════════════════════════════════

def telescoping_coefficients(psi: Decay) -> np.ndarray:
    """c_k = (Ψ(k)² - Ψ(k+1)²)^{1/2} with Ψ(N_max+1) := 0, so Σ_{k≥N} c_k² = Ψ(N)²."""
    squared = np.append(psi.squared(), 0.0)
    return np.sqrt(np.maximum(squared[:-1] - squared[1:], 0.0))


def tpsi_not_vpsi_example(psi: Decay) -> Dict[str, Any]:
    """λ_{N0} = 2^{2N} c_N: t_Ψ-norm 1 by telescoping, v_Ψ ratios unbounded."""
    c = telescoping_coefficients(psi)
    N = np.arange(c.size)
    seq = BlockSequence.from_scalars(4.0 ** N * c)
    vpsi_ratios = vpsi_profile(seq, psi)
    return {
        'example': 'tpsi_not_vpsi',
        'decay': psi.as_dict(),
        'coefficients': c,
        'tpsi': tpsi_seq(seq, psi, n=2),
        'vpsi_profile': vpsi_ratios,
        'vpsi': float(vpsi_ratios.max()),
    }


def vpsi_not_tpsi_example(psi: Decay, widths: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """λ_{0l} = 1 on windows of growing width: v_Ψ stays 1/Ψ(0)², t_Ψ grows like √width."""
    widths = list(widths) if widths is not None else [2 ** m for m in range(11)]
    rows = []
    for width in widths:
        seq = BlockSequence([np.ones(int(width))])
        rows.append({'width': int(width), 'vpsi': vpsi_seq(seq, psi), 'tpsi': tpsi_seq(seq, psi, n=2)})
    return {'example': 'vpsi_not_tpsi', 'decay': psi.as_dict(), 'windows': rows}


# ═══════════════════════════════════════════════════════════════════
# T_Φ ↪ V_Ψ tail condition
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class EmbeddingCheck:
    holds: bool
    constant: float
    divergent: bool
    profile: np.ndarray

    def as_dict(self) -> Dict[str, Any]:
        return {'holds': self.holds, 'constant': self.constant, 'divergent': self.divergent}


def embedding_check(phi: Decay, psi: Decay, bound: Optional[float] = None) -> EmbeddingCheck:
    """max_N Σ_{j≥N} Φ(j) / Ψ(N)² over the common table."""
    phi = require_certified(phi)
    psi = require_certified(psi)
    n_max = min(phi.n_max, psi.n_max)
    profile = _tail_sums(phi.values[:n_max + 1]) / psi.squared()[:n_max + 1]
    constant = float(profile.max())
    divergent = series_diverges(phi)
    holds = not divergent and constant <= sparsekit_setting('EMBEDDING_BOUND', bound)
    if divergent:
        logger.warning(f"Σ Φ(j) for {phi.name} does not converge on 0..{phi.n_max}; T_Φ ↪ V_Ψ is not certified")
    return EmbeddingCheck(holds, constant, divergent, profile)
