"""
Check the S_Ψ / gradient interpolation inequality on the dyadic r-grid.
"""
import logging

from django.core.management.base import BaseCommand

from apps.grid.services.reports import command_refusals, dumps_json, report_envelope, write_csv
from apps.grid.services.spgf import load_spgf
from apps.sequences.services.decay import read_decay_csv
from apps.stability.services.interpolation import RATIO_HEADER, interp_inequality_check

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Ratio of ‖f - f_Q0‖_2 to the S_Ψ + gradient bound for r = 2^-M'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='SPGF grid file (n = 1 or 2)')
        parser.add_argument('--psi', required=True, help='Decay CSV (N, psi)')
        parser.add_argument('--out', required=True, help='Ratios CSV (M, r, lhs, rhs, ratio)')
        parser.add_argument('--eta', type=float, default=None)

    def handle(self, *args, **options):
        with command_refusals():
            f = load_spgf(options['input'])
            psi = read_decay_csv(options['psi'])
            check = interp_inequality_check(f, psi, eta=options['eta'])
            write_csv(options['out'], RATIO_HEADER, check.csv_rows())

        logger.info(f"interp: n={f.n}, J={f.J}, max ratio {check.max_ratio:.6g}")
        payload = {key: value for key, value in check.as_dict().items() if key != 'per_r'}
        payload.update({'n': f.n, 'J': f.J, 'decay': psi.name})
        self.stdout.write(dumps_json(report_envelope('interp', payload, truncated=True)), ending='')
