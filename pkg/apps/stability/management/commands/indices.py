"""
Certified sparse indices s_N of an SPGF grid as CSV (N, lower, upper).
"""
import logging

from django.core.management.base import BaseCommand

from apps.grid.services.reports import command_refusals, write_csv
from apps.grid.services.spgf import load_spgf
from apps.stability.services.indices import INDEX_HEADER, dumps_index_csv, sparse_index_profile

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Compute certified [lower, upper] intervals of the sparse indices s_1..s_K'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='SPGF grid file')
        parser.add_argument('--nmax', type=int, default=None, help='Largest N (default J + 1)')
        parser.add_argument('--eta', type=float, default=None)
        parser.add_argument('--refinement', type=int, default=None)
        parser.add_argument('--out', default=None, help='CSV path (stdout when omitted)')

    def handle(self, *args, **options):
        with command_refusals():
            f = load_spgf(options['input'])
            profile = sparse_index_profile(f, options['nmax'], options['eta'], options['refinement'])

        logger.info(f"indices: n={f.n}, J={f.J}, N=1..{profile.n_max}")
        if any(profile.truncated):
            self.stderr.write(f"Indices beyond N={f.J + 1} are truncated to 0 on a depth-{f.J} grid")
        if options['out']:
            write_csv(options['out'], INDEX_HEADER, profile.rows())
            self.stderr.write(f"Wrote {profile.n_max} indices to {options['out']}")
        else:
            self.stdout.write(dumps_index_csv(profile), ending='')
