"""
Tests for the Lebesgue, Morrey and RMT norms.
"""
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from config.exceptions import ParameterError
from apps.grid.services.grid import DyadicCube, GridFunction, iter_cubes
from apps.norms.services.classical import (
    classical_scores,
    crmt_norm,
    evaluate_packing,
    lp_norm,
    morrey_norm,
    rmt_norm,
)
from apps.sparse.services.domination import SRParams
from apps.sparse.services.sr import sr_norm_certified


def unit_atom(J: int) -> GridFunction:
    values = np.zeros((1 << J, 1 << J))
    values[0, 0] = float(1 << (2 * J))
    return GridFunction(2, J, values, nonneg=True)


def random_grid(shape, seed: int) -> GridFunction:
    n, J = shape
    rng = np.random.default_rng(seed)
    return GridFunction(n, J, rng.random((1 << J,) * n) ** 4, nonneg=True)


class LebesgueTests(SimpleTestCase):

    def test_constant(self):
        f = GridFunction(2, 3, np.ones((8, 8)))
        for p in (1.0, 1.5, 2.0, 7.0, math.inf):
            self.assertAlmostEqual(lp_norm(f, p), 1.0, places=14)

    def test_atom(self):
        for p in (1.0, 2.0, 4.0):
            self.assertAlmostEqual(lp_norm(unit_atom(2), p), 16.0 ** (1.0 - 1.0 / p), places=12)

    def test_direct_sum(self):
        f = random_grid((2, 3), 5)
        expected = math.sqrt(float(np.sum(f.values ** 2)) / 64.0)
        self.assertAlmostEqual(lp_norm(f, 2.0), expected, places=14)

    def test_rejects_p_below_one(self):
        with self.assertRaises(ParameterError):
            lp_norm(unit_atom(2), 0.5)


class MorreyTests(SimpleTestCase):

    def test_constant_is_attained_at_the_root(self):
        f = GridFunction(2, 3, np.ones((8, 8)))
        for p in (1.0, 2.0):
            report = morrey_norm(f, p)
            self.assertAlmostEqual(report.value, 1.0, places=14)
            self.assertEqual(report.witness, [DyadicCube.root(2)])

    def test_atom_with_log_weight(self):
        report = morrey_norm(unit_atom(2), 1.0, 1.0)
        self.assertAlmostEqual(report.value, 1.0 + 4.0 * math.log(2.0), places=14)
        self.assertEqual(report.witness, [DyadicCube(2, (0, 0))])

    def test_dominates_every_cube(self):
        f = random_grid((2, 3), 9)
        report = morrey_norm(f, 1.5, 0.5)
        scores = classical_scores(f, 1.5, 0.5)
        for cube in iter_cubes(2, 3):
            self.assertLessEqual(float(scores[cube.level][cube.index]), report.value)
        witness = report.witness[0]
        self.assertEqual(float(scores[witness.level][witness.index]), report.value)


class RMTTests(SimpleTestCase):

    def test_constant_root_dominates(self):
        report = rmt_norm(GridFunction(2, 3, np.ones((8, 8))), 1.0, 2.0)
        self.assertAlmostEqual(report.value, 1.0, places=14)
        self.assertEqual(report.witness, [DyadicCube.root(2)])

    def test_atom_packing_holds_one_chain_cube(self):
        for J in range(2, 7):
            self.assertAlmostEqual(rmt_norm(unit_atom(J), 1.0, 2.0).value, 1.0, places=14)

    def test_riesz_diagonal_on_constant(self):
        self.assertAlmostEqual(rmt_norm(GridFunction(2, 3, np.ones((8, 8))), 2.0, 2.0).value, 1.0, places=14)

    def test_infinite_q_is_morrey(self):
        f = random_grid((1, 5), 2)
        self.assertEqual(rmt_norm(f, 1.5, math.inf, 1.0).value, morrey_norm(f, 1.5, 1.0).value)

    def test_witness_is_a_packing_attaining_the_value(self):
        for seed in range(5):
            f = random_grid((2, 3), seed)
            report = rmt_norm(f, 1.5, 2.0, 0.5)
            self.assertAlmostEqual(evaluate_packing(f, report.witness, 1.5, 2.0, 0.5), report.value, places=12)

    def test_witness_beats_every_level(self):
        f = random_grid((1, 5), 17)
        report = rmt_norm(f, 1.0, 3.0)
        for level in range(6):
            cubes = [DyadicCube(level, (m,)) for m in range(1 << level)]
            self.assertLessEqual(evaluate_packing(f, cubes, 1.0, 3.0), report.value + 1e-12)

    def test_overlapping_packing_is_refused(self):
        with self.assertRaises(ParameterError):
            evaluate_packing(unit_atom(2), [DyadicCube.root(2), DyadicCube(1, (0, 0))], 1.0, 2.0)


class CongruentRMTTests(SimpleTestCase):

    def test_constant_every_level_sums_to_one(self):
        report = crmt_norm(GridFunction(2, 3, np.ones((8, 8))), 2.0, 2.0)
        self.assertAlmostEqual(report.value, 1.0, places=14)

    def test_atom(self):
        self.assertAlmostEqual(crmt_norm(unit_atom(3), 1.0, 2.0).value, 1.0, places=14)

    def test_rejects_infinite_q(self):
        with self.assertRaises(ParameterError):
            crmt_norm(unit_atom(2), 1.0, math.inf)

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(st.sampled_from([(1, 5), (2, 3)]), st.integers(0, 2 ** 32 - 1))
    def test_congruent_packing_sparse_chain(self, shape, seed):
        f = random_grid(shape, seed)
        params = SRParams(1.0, 2.0)
        crmt = crmt_norm(f, 1.0, 2.0).value
        rmt = rmt_norm(f, 1.0, 2.0).value
        upper = sr_norm_certified(f, params).upper
        self.assertLessEqual(crmt, rmt * (1 + 1e-12))
        self.assertLessEqual(rmt, upper * (1 + 1e-12))
