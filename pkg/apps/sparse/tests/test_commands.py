"""
Tests for the dominate management command.
"""
import io
import json
import tempfile
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.grid.services.grid import GridFunction
from apps.grid.services.spgf import save_spgf


class DominateCommandTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)
        values = np.zeros((4, 4))
        values[0, 0] = 16.0
        save_spgf(GridFunction(2, 2, values, nonneg=True), self.dir / 'atom.spgf')

    def test_writes_family_and_report(self):
        out = io.StringIO()
        call_command(
            'dominate',
            '--input', str(self.dir / 'atom.spgf'),
            '--out', str(self.dir / 'family.csv'),
            '--p', '1', '--q', '2', '--check',
            stdout=out, stderr=io.StringIO()
        )
        self.assertEqual((self.dir / 'family.csv').read_text(), 'level,m1,m2\n0,0,0\n2,0,0\n')
        report = json.loads(out.getvalue())
        self.assertEqual(report['kind'], 'dominate')
        self.assertTrue(report['sparseness']['ok'])
        self.assertLessEqual(report['domination']['max_ratio'], 1.0)

    def test_parameter_refusal_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            call_command(
                'dominate',
                '--input', str(self.dir / 'atom.spgf'),
                '--out', str(self.dir / 'family.csv'),
                '--p', '3', '--q', '2',
                stdout=io.StringIO(), stderr=io.StringIO()
            )
        self.assertEqual(ctx.exception.returncode, 2)

    def test_output_is_deterministic(self):
        reports = []
        for name in ('a.json', 'b.json'):
            call_command(
                'dominate',
                '--input', str(self.dir / 'atom.spgf'),
                '--out', str(self.dir / 'family.csv'),
                '--p', '1', '--report', str(self.dir / name),
                stdout=io.StringIO(), stderr=io.StringIO()
            )
            reports.append((self.dir / name).read_bytes())
        self.assertEqual(reports[0], reports[1])
