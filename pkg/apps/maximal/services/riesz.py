"""
Discrete Riesz potentials I_λ(|f|) on a zero-padded domain and the negative
Sobolev norms built on them.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate, signal, special

from config.exceptions import ParameterError
from apps.grid.services.config import sparsekit_setting
from apps.grid.services.grid import GridFunction
from apps.maximal.services.maximal import fractional_maximal, lq_norm

logger = logging.getLogger(__name__)

CONVOLUTION_METHODS = ('auto', 'direct', 'fft')


@dataclass(frozen=True, eq=False)
class PaddedField:
    """
    Values on the padded cube of ``padding`` · 2^J cells per side.

    Q0 occupies cells [offset, offset + 2^J) along every axis.
    """

    n: int
    J: int
    padding: int
    values: np.ndarray

    @property
    def offset(self) -> int:
        return ((self.padding - 1) // 2) * (1 << self.J)

    @property
    def cell_volume(self) -> float:
        return 2.0 ** (-self.n * self.J)

    def restrict(self) -> GridFunction:
        """The part of the field over Q0."""
        side = 1 << self.J
        window = (slice(self.offset, self.offset + side),) * self.n
        return GridFunction(self.n, self.J, self.values[window], nonneg=bool(np.all(self.values >= 0)))


def _check_order(n: int, lam: float):
    if not 0.0 < lam < n:
        raise ParameterError(f"Riesz order λ must lie in (0, {n}), got {lam}")


@lru_cache(maxsize=64)
def _unit_cube_kernel_integral(n: int, lam: float, tol: float) -> float:
    """∫_{[0,1]^n} |z|^{λ-n} dz, from the outer shell and self-similarity."""
    exponent = 0.5 * (lam - n)

    def integrand(*z):
        return sum(c * c for c in z) ** exponent

    shell = 0.0
    for bits in itertools.product((0, 1), repeat=n):
        if not any(bits):
            continue
        ranges = [(0.5 * b, 0.5 * (b + 1)) for b in bits]
        value, _ = integrate.nquad(integrand, ranges, opts={'epsabs': tol, 'epsrel': tol})
        shell += value
    return shell / (1.0 - 2.0 ** (-lam))


def diagonal_cell_average(n: int, lam: float, h: float, tol: Optional[float] = None) -> float:
    """Average of |x|^{λ-n} over the centered cube of side h."""
    _check_order(n, lam)
    half = 0.5 * h
    if n == 1:
        return half ** (lam - 1.0) / lam
    tol = sparsekit_setting('DIAGONAL_QUAD_TOL', tol)
    inner = _unit_cube_kernel_integral(n, float(lam), float(tol))
    return (2.0 ** n) * half ** lam * inner / h ** n


def riesz_kernel(n: int, J: int, padding: int, lam: float, tol: Optional[float] = None) -> np.ndarray:
    """Cell-volume weighted kernel |d h|^{λ-n} h^n on displacements |d_i| <= M - 1."""
    h = 2.0 ** -J
    size = padding * (1 << J)
    offsets = np.arange(-(size - 1), size, dtype=np.float64) * h
    axes = np.meshgrid(*([offsets] * n), indexing='ij')
    radius_sq = sum(axis * axis for axis in axes)
    center = (size - 1,) * n
    radius_sq[center] = 1.0
    kernel = radius_sq ** (0.5 * (lam - n)) * h ** n
    kernel[center] = diagonal_cell_average(n, lam, h, tol) * h ** n
    return kernel


def _padded_absolute(f: GridFunction, padding: int) -> np.ndarray:
    side = f.side
    padded = np.zeros((padding * side,) * f.n)
    offset = ((padding - 1) // 2) * side
    padded[(slice(offset, offset + side),) * f.n] = np.abs(f.values)
    return padded


def _resolve_padding(padding: Optional[int]) -> int:
    padding = int(sparsekit_setting('PADDING', padding))
    if padding < 1:
        raise ParameterError(f"Padding factor must be >= 1, got {padding}")
    return padding


def riesz_potential(
    f: GridFunction,
    lam: float,
    padding: Optional[int] = None,
    method: Optional[str] = None
) -> PaddedField:
    """I_λ(|f|) at the cell centers of the padded domain, via scipy convolution."""
    _check_order(f.n, lam)
    padding = _resolve_padding(padding)
    method = sparsekit_setting('CONVOLUTION_METHOD', method)
    if method not in CONVOLUTION_METHODS:
        raise ParameterError(f"Unknown convolution method '{method}'")

    padded = _padded_absolute(f, padding)
    kernel = riesz_kernel(f.n, f.J, padding, lam)
    values = signal.convolve(padded, kernel, mode='same', method=method)
    logger.debug(f"Riesz potential: n={f.n}, J={f.J}, λ={lam}, padding={padding}, method={method}")
    return PaddedField(f.n, f.J, padding, np.maximum(values, 0.0))


def sobolev_negative_norm(
    f: GridFunction,
    lam: float,
    q: float,
    padding: Optional[int] = None,
    method: Optional[str] = None
) -> float:
    """‖I_λ(|f|)‖_{L^q} over the padded domain."""
    if q < 1:
        raise ParameterError(f"Exponent q must be >= 1, got {q}")
    field = riesz_potential(f, lam, padding, method)
    return lq_norm(field.values, field.cell_volume, q)


def riesz_constant(n: int, lam: float) -> float:
    """γ with (I_λ g)^(ξ) = γ |ξ|^{-λ} ĝ(ξ) for the e^{-2πi x·ξ} transform."""
    return math.pi ** (0.5 * n - lam) * special.gamma(0.5 * lam) / special.gamma(0.5 * (n - lam))


def sobolev_negative_norm_fourier(f: GridFunction, lam: float, padding: Optional[int] = None) -> float:
    """
    L² size of I_λ(|f|) on the padded torus from the DFT, zero mode dropped.

    Compares against sobolev_negative_norm(q=2) as a cross-check; the torus
    periodization makes the two differ by a padding-dependent amount.
    """
    _check_order(f.n, lam)
    padding = _resolve_padding(padding)
    h = 2.0 ** -f.J
    padded = _padded_absolute(f, padding)
    size = padded.shape[0]
    transform = np.fft.fftn(padded) * h ** f.n
    freqs = np.fft.fftfreq(size, d=h)
    axes = np.meshgrid(*([freqs] * f.n), indexing='ij')
    radius_sq = sum(axis * axis for axis in axes)
    nonzero = radius_sq > 0
    energy = np.sum(np.abs(transform[nonzero]) ** 2 * radius_sq[nonzero] ** (-lam))
    return riesz_constant(f.n, lam) * math.sqrt(energy / (size * h) ** f.n)


def fractional_maximal_norm(f: GridFunction, lam: float, q: float) -> float:
    """‖𝓜_λ f‖_{L^q(Q0)} with the shifted-grid fractional maximal function."""
    maximal = fractional_maximal(f, lam)
    return lq_norm(maximal.values, maximal.cell_volume, q)
