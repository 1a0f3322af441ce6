"""
Sequence-space computations: the separating examples, K-functionals and extrapolation.
"""
import logging

from django.core.management.base import BaseCommand

from config.exceptions import ParameterError
from apps.grid.services.reports import command_refusals, dumps_json, report_envelope, write_json
from apps.sequences.services.decay import decay_certify, make_decay, read_decay_csv
from apps.sequences.services.sequences import (
    BlockSequence,
    besov_weights,
    embedding_check,
    extrapolation_profile,
    extrapolation_norm,
    k_functional,
    tpsi_not_vpsi_example,
    vpsi_not_tpsi_example,
    vpsi_seq,
)

logger = logging.getLogger(__name__)


def _floats(text: str):
    try:
        return [float(value) for value in text.split(',') if value.strip()]
    except ValueError as exc:
        raise ParameterError(f"Expected a comma-separated list of numbers, got '{text}'") from exc


class Command(BaseCommand):
    help = 'Separating examples, K-functionals and extrapolation norms of block sequences'

    def add_arguments(self, parser):
        parser.add_argument('--example', required=True, choices=['9.1', '9.2', 'kfunc', 'extrapolate', 'embedding'])
        parser.add_argument('--psi', default=None, help='Decay CSV (N,psi); overrides --decay')
        parser.add_argument('--decay', default='shifted_power', help='Closed-form decay kind')
        parser.add_argument('--decay-param', type=float, default=0.5)
        parser.add_argument('--phi', default='exponential', help='Decay kind of Φ for --example embedding')
        parser.add_argument('--phi-param', type=float, default=1.0)
        parser.add_argument('--nmax', type=int, default=None)
        parser.add_argument('--a', default='1,1', help='Comma-separated sequence a_j')
        parser.add_argument('--t', default='0.5', help='Comma-separated values of t')
        parser.add_argument('--s', type=float, default=0.0)
        parser.add_argument('--width-exponent', type=int, default=10)
        parser.add_argument('--out', default=None, help='JSON report path (stdout when omitted)')

    def handle(self, *args, **options):
        with command_refusals():
            if options['psi']:
                psi = read_decay_csv(options['psi'])
            else:
                psi = make_decay(options['decay'], options['decay_param'], options['nmax'])
            psi = decay_certify(psi)
            payload = self.run_example(options, psi)

        report = report_envelope('seq', payload, truncated=True)
        if options['out']:
            write_json(report, options['out'])
        else:
            self.stdout.write(dumps_json(report), ending='')

    def run_example(self, options, psi):
        example = options['example']
        if example == '9.1':
            return tpsi_not_vpsi_example(psi)
        if example == '9.2':
            return vpsi_not_tpsi_example(psi, [2 ** m for m in range(options['width_exponent'] + 1)])
        if example == 'embedding':
            phi = make_decay(options['phi'], options['phi_param'], options['nmax'])
            return {'phi': phi.as_dict(), 'psi': psi.as_dict(), **embedding_check(phi, psi).as_dict()}

        a = _floats(options['a'])
        if example == 'kfunc':
            w0, w1 = besov_weights(len(a), options['s'])
            rows = [{'t': t, 'K': k_functional(t, a, w0, w1)} for t in _floats(options['t'])]
            return {'a': a, 's': options['s'], 'values': rows}
        return {
            'a': a,
            's': options['s'],
            'decay': psi.as_dict(),
            'extrapolation': extrapolation_norm(a, psi, options['s']),
            'profile': extrapolation_profile(a, psi, options['s']),
            'vpsi': vpsi_seq(BlockSequence.from_scalars(a), psi),
        }
