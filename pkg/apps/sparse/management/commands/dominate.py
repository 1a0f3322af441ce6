"""
Run sparse domination on an SPGF grid and write the family as CSV.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from apps.grid.services.reports import command_refusals, report_envelope, dumps_json, write_json
from apps.grid.services.spgf import load_spgf
from apps.sparse.services.domination import SRParams, check_domination, domination_constant, sparse_dominate
from apps.sparse.services.families import verify_sparse, write_family_csv

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Construct the sparse family dominating M_{λ,α,Q0} f and optionally check the domination'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='SPGF grid file')
        parser.add_argument('--out', required=True, help='Family CSV (columns level,m1..mn)')
        parser.add_argument('--p', type=float, required=True)
        parser.add_argument('--q', type=float, default=2.0)
        parser.add_argument('--alpha', type=float, default=0.0)
        parser.add_argument('--eta', type=float, default=None)
        parser.add_argument('--check', action='store_true', help='Verify pointwise domination on every cell')
        parser.add_argument('--report', default=None, help='Optional JSON report path')

    def handle(self, *args, **options):
        with command_refusals():
            f = load_spgf(options['input'])
            params = SRParams(options['p'], options['q'], options['alpha'])
            family = sparse_dominate(f, params, options['eta'])
            write_family_csv(family, options['out'])

            sparseness = verify_sparse(family)
            payload = {
                'n': f.n,
                'J': f.J,
                'params': {'p': params.p, 'q': params.q, 'alpha': params.alpha},
                'constant': domination_constant(params),
                'size': len(family),
                'sparseness': sparseness.as_dict(),
            }
            if options['check']:
                check = check_domination(f, family, params)
                payload['domination'] = check.as_dict()

        report = report_envelope('dominate', payload)
        if options['report']:
            write_json(report, options['report'])
        else:
            self.stdout.write(dumps_json(report), ending='')

        if options['check'] and payload['domination']['max_ratio'] > 1.0:
            raise CommandError(f"Domination check failed: max ratio {payload['domination']['max_ratio']}")
        self.stderr.write(f"Wrote {len(family)} cubes to {options['out']}")
