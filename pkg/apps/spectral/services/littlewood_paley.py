"""
Littlewood–Paley blocks on the zero-padded torus and the norms built from them.

Frequencies are in cycles per unit length (``np.fft.fftfreq`` with spacing 2^-J).
The radial profile χ equals 1 on |ξ| ≤ 1, 0 on |ξ| ≥ 2 and is the quintic
smoothstep in between; φ_0 = χ and φ_j(ξ) = χ(2^-j ξ) - χ(2^{1-j} ξ).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import GridFunction
from apps.grid.services.reports import dumps_csv
from apps.maximal.services.maximal import lq_norm
from apps.sequences.services.decay import Decay, require_certified
from apps.sequences.services.sequences import embedding_check

logger = logging.getLogger(__name__)

PROFILE = {
    'profile': 'quintic_smoothstep',
    'inner_radius': 1.0,
    'outer_radius': 2.0,
    'units': 'cycles per unit length',
}

BLOCK_HEADER = ['j', 'linf', 'l2']
ZERO_BLOCK_TOL = 1e-12


def smoothstep(x: np.ndarray) -> np.ndarray:
    """6x^5 - 15x^4 + 10x^3 clipped to [0, 1]."""
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


def radial_cutoff(r: np.ndarray) -> np.ndarray:
    """χ(r): 1 for r ≤ 1, 0 for r ≥ 2."""
    return 1.0 - smoothstep(np.asarray(r) - 1.0)


def multiplier(j: int, r: np.ndarray) -> np.ndarray:
    if j == 0:
        return radial_cutoff(r)
    return radial_cutoff(r / 2.0 ** j) - radial_cutoff(r / 2.0 ** (j - 1))


@dataclass(frozen=True, eq=False)
class LPDecomposition:
    """Blocks Δ_j f, j = 0..j_max, on the torus of ``padding`` · 2^J cells per side."""

    n: int
    J: int
    padding: int
    blocks: List[np.ndarray]
    radius: np.ndarray
    transform: np.ndarray
    descriptor: Dict[str, Any] = field(default_factory=dict)

    @property
    def j_max(self) -> int:
        return len(self.blocks) - 1

    @property
    def cell_volume(self) -> float:
        return 2.0 ** (-self.n * self.J)

    @property
    def torus_volume(self) -> float:
        return float(self.padding) ** self.n

    def linf_norms(self) -> np.ndarray:
        return np.array([float(np.max(np.abs(block))) for block in self.blocks])

    def lp_norms(self, p: float) -> np.ndarray:
        return np.array([lq_norm(block, self.cell_volume, p) for block in self.blocks])

    def l2_norms(self) -> np.ndarray:
        return self.lp_norms(2.0)

    def reconstruct(self) -> np.ndarray:
        return np.sum(self.blocks, axis=0)

    @property
    def truncated(self) -> bool:
        """True when the finest block still carries energy, so sups over N stop at j_max."""
        l2 = self.l2_norms()
        return bool(l2[-1] > ZERO_BLOCK_TOL * l2.max())

    def block_rows(self):
        return [(j, linf, l2) for j, (linf, l2) in enumerate(zip(self.linf_norms(), self.l2_norms()))]


def _resolve_padding(padding: Optional[int], periodic: bool = False) -> int:
    if periodic:
        return 1
    padding = int(sparsekit_setting('PADDING', padding))
    if padding < 2:
        raise ParameterError(f"Littlewood–Paley blocks need a torus at least twice the support, got padding {padding}")
    return padding


def frequency_radius(n: int, J: int, padding: int) -> np.ndarray:
    size = padding << J
    freqs = np.fft.fftfreq(size, d=2.0 ** -J)
    axes = np.meshgrid(*([freqs] * n), indexing='ij')
    return np.sqrt(sum(axis * axis for axis in axes))


def block_count(n: int, J: int) -> int:
    """Smallest j_max + 1 with 2^{j_max} at least the largest grid frequency √n 2^{J-1}."""
    largest = math.sqrt(n) * 2.0 ** (J - 1)
    return max(int(math.ceil(math.log2(largest))), 0) + 1 if largest > 1.0 else 1


def lp_blocks(f: GridFunction, padding: Optional[int] = None, periodic: bool = False) -> LPDecomposition:
    """
    Δ_j f for j = 0..j_max by Fourier multipliers.

    f sits in the corner of a torus ``padding`` times its side; ``periodic``
    takes Q0 itself as the torus instead.
    """
    padding = _resolve_padding(padding, periodic)
    side = f.side
    padded = np.zeros((padding * side,) * f.n)
    padded[(slice(0, side),) * f.n] = f.values

    transform = np.fft.fftn(padded)
    radius = frequency_radius(f.n, f.J, padding)
    blocks = [
        np.real(np.fft.ifftn(multiplier(j, radius) * transform))
        for j in range(block_count(f.n, f.J))
    ]
    logger.debug(f"LP blocks: n={f.n}, J={f.J}, padding={padding}, j_max={len(blocks) - 1}")
    return LPDecomposition(
        n=f.n,
        J=f.J,
        padding=padding,
        blocks=blocks,
        radius=radius,
        transform=transform,
        descriptor={**PROFILE, 'padding': padding, 'periodic': periodic},
    )


def dumps_block_csv(decomposition: LPDecomposition) -> str:
    return dumps_csv(BLOCK_HEADER, decomposition.block_rows())


# ═══════════════════════════════════════════════════════════════════
# Norms
# ═══════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class BesovParams:
    s: float
    p: float
    q: float

    def __post_init__(self):
        if self.p < 1.0 or self.q < 1.0:
            raise ParameterError(f"Besov exponents need p, q >= 1, got p={self.p}, q={self.q}")


def besov_norm(decomposition: LPDecomposition, params: BesovParams) -> float:
    """(Σ_j (2^{js} ‖Δ_j f‖_p)^q)^{1/q}, max over j when q = ∞."""
    j = np.arange(decomposition.j_max + 1)
    terms = 2.0 ** (params.s * j) * decomposition.lp_norms(params.p)
    if math.isinf(params.q):
        return float(terms.max())
    return float(np.sum(terms ** params.q) ** (1.0 / params.q))


def _tail_sums(terms: np.ndarray) -> np.ndarray:
    return np.cumsum(terms[::-1])[::-1]


def _decay_squared(psi: Decay, j_max: int) -> np.ndarray:
    if psi.n_max < j_max:
        raise ParameterError(f"Decay {psi.name} is tabulated up to {psi.n_max}, the blocks reach j={j_max}")
    return psi.squared()[:j_max + 1]


def vpsi_norm(decomposition: LPDecomposition, psi: Decay) -> float:
    """sup_N Ψ(N)^{-2} Σ_{j≥N} 2^{-2j} ‖Δ_j f‖_∞ for N ≤ j_max."""
    j = np.arange(decomposition.j_max + 1)
    tails = _tail_sums(4.0 ** -j * decomposition.linf_norms())
    return float(np.max(tails / _decay_squared(psi, decomposition.j_max)))


def tpsi_blockwise(decomposition: LPDecomposition, psi: Decay) -> float:
    """[sup_N Ψ(N)^{-2} Σ_{j≥N} 2^{-2j} ‖Δ_j f‖_2²]^{1/2}."""
    j = np.arange(decomposition.j_max + 1)
    tails = _tail_sums(4.0 ** -j * decomposition.l2_norms() ** 2)
    return math.sqrt(float(np.max(tails / _decay_squared(psi, decomposition.j_max))))


def tpsi_fourier(decomposition: LPDecomposition, psi: Decay) -> float:
    """[sup_N Ψ(N)^{-2} ∫_{|ξ| ≥ 2^N - 1} (1 + |ξ|²)^{-1} |f̂(ξ)|² dξ]^{1/2} on the torus frequencies."""
    h_n = decomposition.cell_volume
    density = (np.abs(decomposition.transform) * h_n) ** 2 / (1.0 + decomposition.radius ** 2)
    density = density / decomposition.torus_volume
    squared = _decay_squared(psi, decomposition.j_max)
    best = 0.0
    for N in range(decomposition.j_max + 1):
        mass = float(np.sum(density[decomposition.radius >= 2.0 ** N - 1.0]))
        best = max(best, mass / squared[N])
    return math.sqrt(best)


def tpsi_norm(decomposition: LPDecomposition, psi: Decay) -> Dict[str, float]:
    return {'blockwise': tpsi_blockwise(decomposition, psi), 'fourier': tpsi_fourier(decomposition, psi)}


def nikolskii_ratio(decomposition: LPDecomposition, rel_tol: float = ZERO_BLOCK_TOL) -> float:
    """
    max_j ‖Δ_j f‖_∞ / (2^j ‖Δ_j f‖_2) over the nonzero blocks (n = 2).

    Blocks whose L² norm is below ``rel_tol`` times the largest one hold FFT
    round-off only and are skipped.
    """
    if decomposition.n != 2:
        raise ParameterError(f"The Nikolskii comparison is set in n = 2, got n={decomposition.n}")
    linf = decomposition.linf_norms()
    l2 = decomposition.l2_norms()
    floor = rel_tol * float(l2.max())
    ratios = [
        linf[j] / (2.0 ** j * l2[j])
        for j in range(decomposition.j_max + 1)
        if l2[j] > floor and l2[j] > 0.0
    ]
    return max(ratios) if ratios else 0.0


@dataclass(frozen=True)
class EmbeddingCertificate:
    """vpsi_norm(f, Ψ) ≤ nikolskii · constant · tpsi_blockwise(f, Φ)."""

    vpsi: float
    tpsi: float
    nikolskii: float
    constant: float
    holds: bool
    bound: float

    def as_dict(self) -> Dict[str, Any]:
        return {
            'vpsi': self.vpsi,
            'tpsi': self.tpsi,
            'nikolskii': self.nikolskii,
            'constant': self.constant,
            'holds': self.holds,
            'bound': self.bound,
        }


def embedding_certificate(decomposition: LPDecomposition, phi: Decay, psi: Decay) -> EmbeddingCertificate:
    check = embedding_check(phi, psi)
    if check.divergent:
        raise ParameterError(f"Σ Φ(j) diverges for {phi.name}; the T_Φ ↪ V_Ψ certificate does not apply")
    vpsi = vpsi_norm(decomposition, psi)
    tpsi = tpsi_blockwise(decomposition, phi)
    nikolskii = nikolskii_ratio(decomposition)
    bound = nikolskii * check.constant * tpsi
    return EmbeddingCertificate(vpsi, tpsi, nikolskii, check.constant, check.holds, bound)


def spectral_norms(
    f: GridFunction,
    psi: Decay,
    besov: Optional[BesovParams] = None,
    padding: Optional[int] = None
) -> Dict[str, Any]:
    """V_Ψ, both T_Ψ forms and optionally a Besov norm, with the multiplier descriptor."""
    psi = require_certified(psi)
    decomposition = lp_blocks(f, padding)
    payload = {
        'vpsi': vpsi_norm(decomposition, psi),
        'tpsi': tpsi_norm(decomposition, psi),
        'j_max': decomposition.j_max,
        'truncated': decomposition.truncated,
        'profile': decomposition.descriptor,
        'blocks': [{'j': j, 'linf': linf, 'l2': l2} for j, linf, l2 in decomposition.block_rows()],
    }
    if besov is not None:
        payload['besov'] = besov_norm(decomposition, besov)
    if f.n == 2:
        payload['nikolskii'] = nikolskii_ratio(decomposition)
    return payload
