"""
Fit the sparse-index decay of one classical space and write the JSON report.
"""
import logging

from django.core.management.base import BaseCommand

from apps.grid.services.reports import command_refusals, dumps_json, report_envelope, write_json
from apps.stability.services.table1 import TABLE1_SPACES, table1_experiment

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Fit log2 of probe s_N upper bounds for Lebesgue, Morrey or RMT spaces against the predicted rate'

    def add_arguments(self, parser):
        parser.add_argument('--space', required=True, choices=TABLE1_SPACES)
        parser.add_argument('--p', type=float, required=True)
        parser.add_argument('--alpha', type=float, default=0.0)
        parser.add_argument('--n', type=int, default=2)
        parser.add_argument('--jmin', type=int, default=5)
        parser.add_argument('--jmax', type=int, default=8)
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--tolerance', type=float, default=None, help='Allowed slope deviation')
        parser.add_argument('--out', default=None, help='JSON report path (stdout when omitted)')

    def handle(self, *args, **options):
        with command_refusals():
            report = table1_experiment(
                options['space'],
                options['p'],
                options['alpha'],
                options['n'],
                (options['jmin'], options['jmax']),
                seed=options['seed'],
                tolerance=options['tolerance'],
            )

        logger.info(f"table1 {options['space']}: worst deviation {report['worst_deviation']:.4f}")
        envelope = report_envelope('table1', report, seed=options['seed'])
        if options['out']:
            write_json(envelope, options['out'])
            self.stderr.write(
                f"Worst slope deviation {report['worst_deviation']:.4f} "
                f"(within band: {report['within_band']}); wrote {options['out']}"
            )
        else:
            self.stdout.write(dumps_json(envelope), ending='')
