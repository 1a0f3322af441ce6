"""
Extract Ψ(N) = max_ε s_N(ω^ε) from a directory of SPGF grids.
"""
import logging
from pathlib import Path

from django.core.management.base import BaseCommand

from config.exceptions import ParameterError
from apps.grid.services.reports import command_refusals, dumps_json, report_envelope, write_json
from apps.grid.services.spgf import load_spgf
from apps.sequences.services.decay import write_decay_csv
from apps.stability.services.corpus import FamilyMember, FunctionFamily
from apps.stability.services.indices import extract_decay

logger = logging.getLogger(__name__)


def load_family(directory) -> FunctionFamily:
    """Every *.spgf file of ``directory`` in name order, labeled by file stem."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ParameterError(f"Family directory {directory} does not exist")
    paths = sorted(directory.glob('*.spgf'))
    members = [FamilyMember(path.stem, load_spgf(path)) for path in paths]
    return FunctionFamily(directory.name, members, {'source': str(directory)})


class Command(BaseCommand):
    help = 'Tabulate the sparse-index decay of a family of grids and certify it'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, help='Directory of SPGF grids, already normalized')
        parser.add_argument('--out', required=True, help='Decay CSV (N, psi)')
        parser.add_argument('--eta', type=float, default=None)
        parser.add_argument('--report', default=None, help='Optional JSON report path')

    def handle(self, *args, **options):
        with command_refusals():
            family = load_family(options['family'])
            psi = extract_decay(family, options['eta'])
            write_decay_csv(psi, options['out'])

        logger.info(f"decay: {len(family)} members, decaying={psi.certificate.decaying}")
        payload = {'members': [member.label for member in family.members], 'decay': psi.as_dict()}
        report = report_envelope('decay', payload, truncated=True)
        if options['report']:
            write_json(report, options['report'])
        else:
            self.stdout.write(dumps_json(report), ending='')
        self.stderr.write(f"Wrote Ψ(0..{psi.n_max}) to {options['out']}")
