"""
Evaluate one norm of an SPGF grid and write the JSON report.
"""
import logging
import math

from django.core.management.base import BaseCommand

from config.exceptions import ParameterError
from apps.grid.services.reports import CertifiedInterval, command_refusals, dumps_json, report_envelope, write_json
from apps.grid.services.spgf import load_spgf
from apps.maximal.services.riesz import sobolev_negative_norm
from apps.norms.services.dispatch import CLASSICAL_SPACES, evaluate_space
from apps.sequences.services.decay import DECAY_KINDS, make_decay, read_decay_csv, require_certified
from apps.sparse.services.domination import SRParams
from apps.sparse.services.families import read_family_csv
from apps.sparse.services.sr import (
    SparseSupremum,
    exact_supremum,
    sr_norm_certified,
    sr_norm_family,
    sr_norm_maximal,
    sr_scores,
)
from apps.spectral.services.littlewood_paley import lp_blocks, tpsi_norm, vpsi_norm

logger = logging.getLogger(__name__)

SPACES = CLASSICAL_SPACES + ('sr', 'sobolev', 'vpsi', 'tpsi')


def _exponent(text: str) -> float:
    return math.inf if text.lower() in ('inf', 'infinity') else float(text)


class Command(BaseCommand):
    help = 'Evaluate a Lebesgue, Morrey, RMT, SR, Lorentz, Sobolev or V_Ψ/T_Ψ norm of an SPGF grid'

    def add_arguments(self, parser):
        parser.add_argument('--space', required=True, choices=SPACES)
        parser.add_argument('--input', required=True, help='SPGF grid file')
        parser.add_argument('--p', type=_exponent, default=1.0)
        parser.add_argument('--q', type=_exponent, default=2.0)
        parser.add_argument('--alpha', type=float, default=0.0)
        parser.add_argument('--lambda', dest='lam', type=float, default=None, help='Riesz order for sobolev')
        parser.add_argument('--method', default='certified', choices=['certified', 'maximal', 'family', 'bruteforce'])
        parser.add_argument('--family', default=None, help='Family CSV for --method family')
        parser.add_argument('--eta', type=float, default=None)
        parser.add_argument('--refinement', type=int, default=None)
        parser.add_argument('--padding', type=int, default=None)
        parser.add_argument('--psi', default=None, help='Decay CSV (N,psi) for vpsi/tpsi')
        parser.add_argument('--decay', default='shifted_power', choices=sorted(DECAY_KINDS))
        parser.add_argument('--decay-param', type=float, default=0.5)
        parser.add_argument('--out', default=None, help='JSON report path (stdout when omitted)')

    def handle(self, *args, **options):
        with command_refusals():
            f = load_spgf(options['input'])
            space = options['space']
            if space in CLASSICAL_SPACES:
                payload, certified, truncated = self.classical(f, options)
            elif space == 'sr':
                payload, certified, truncated = self.sparse(f, options)
            elif space == 'sobolev':
                payload, certified, truncated = self.sobolev(f, options)
            else:
                payload, certified, truncated = self.spectral(f, options)
            payload.update({'space': space, 'n': f.n, 'J': f.J})

        logger.info(f"norm {space}: n={f.n}, J={f.J}, value={payload.get('value')}")
        report = report_envelope('norm', payload, truncated=truncated, certified=certified)
        if options['out']:
            write_json(report, options['out'])
        else:
            self.stdout.write(dumps_json(report), ending='')

    def classical(self, f, options):
        report = evaluate_space(f, options['space'], options['p'], options['q'], options['alpha'])
        payload = report.as_dict()
        payload['extras'] = report.extras
        return payload, CertifiedInterval(report.value, report.value), False

    def sparse(self, f, options):
        params = SRParams(options['p'], options['q'], options['alpha'])
        method = options['method']
        payload = {'method': method, 'p': params.p, 'q': params.q, 'alpha': params.alpha}
        if method == 'certified':
            if math.isinf(params.q):
                interval = sr_norm_certified(f, params, options['eta'], options['refinement'])
                payload['value'] = interval.midpoint
                return payload, interval, False
            supremum = SparseSupremum.build(sr_scores(f, params), f.n, params.q, options['eta'], options['refinement'])
            interval = supremum.interval(0)
            payload['value'] = interval.midpoint
            return payload, interval, supremum.truncated
        if method == 'maximal':
            bound = sr_norm_maximal(f, params, options['eta'])
            payload['value'] = bound.value
            return payload, CertifiedInterval(0.0, bound.upper), False
        if method == 'family':
            if not options['family']:
                raise ParameterError("--method family needs --family")
            family = read_family_csv(options['family'], f.J, options['eta'])
            payload['value'] = sr_norm_family(f, family, params)
            return payload, None, False
        result = exact_supremum(sr_scores(f, params), f.n, params.q, options['eta'])
        payload['value'] = result.value
        payload['family'] = [list(row) for row in result.family.rows()]
        return payload, CertifiedInterval(result.value, result.value), False

    def sobolev(self, f, options):
        if options['lam'] is None:
            raise ParameterError("--space sobolev needs --lambda")
        value = sobolev_negative_norm(f, options['lam'], options['q'], options['padding'])
        payload = {'lambda': options['lam'], 'q': options['q'], 'value': value}
        return payload, CertifiedInterval(value, value), False

    def spectral(self, f, options):
        if options['psi']:
            psi = read_decay_csv(options['psi'])
        else:
            psi = make_decay(options['decay'], options['decay_param'])
        psi = require_certified(psi)
        decomposition = lp_blocks(f, options['padding'])
        payload = {'decay': psi.as_dict(), 'profile': decomposition.descriptor, 'j_max': decomposition.j_max}
        if options['space'] == 'vpsi':
            payload['value'] = vpsi_norm(decomposition, psi)
        else:
            forms = tpsi_norm(decomposition, psi)
            payload['value'] = forms['blockwise']
            payload['fourier'] = forms['fourier']
        return payload, None, decomposition.truncated
