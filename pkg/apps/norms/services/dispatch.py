"""
Space-name dispatch shared by the norm endpoint and the ``norm`` command.
"""
from apps.grid.services.grid import GridFunction
from apps.norms.services.classical import NormReport, crmt_norm, lp_norm, morrey_norm, rmt_norm
from apps.norms.services.lorentz import lorentz_norms

CLASSICAL_SPACES = ('lp', 'morrey', 'rmt', 'crmt', 'lorentz')


def evaluate_space(f: GridFunction, space: str, p: float, q: float, alpha: float) -> NormReport:
    """Norm of ``space``; lorentz puts L^{1,2} in value and both norms in extras."""
    if space == 'lp':
        return NormReport('lp', p, None, 0.0, lp_norm(f, p), 'exact')
    if space == 'morrey':
        return morrey_norm(f, p, alpha)
    if space == 'rmt':
        return rmt_norm(f, p, q, alpha)
    if space == 'crmt':
        return crmt_norm(f, p, q, alpha)
    norms = lorentz_norms(f)
    return NormReport('lorentz', None, None, 0.0, norms['l12'], 'rearrangement', extras=norms)
