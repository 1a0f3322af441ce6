"""
Tests for the SR norm routes, the tree program and the L² characterizations.
"""
import math

import numpy as np
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hypothesis_settings, strategies as st

from config.exceptions import BudgetError, ParameterError, UnverifiedFamilyError
from apps.grid.services.grid import DyadicCube, GridFunction, build_table
from apps.norms.services.classical import lp_norm
from apps.sparse.services.domination import SRParams
from apps.sparse.services.families import SparseFamily, verify_sparse
from apps.sparse.services.program import group_children, maxplus, run_program
from apps.sparse.services.sr import (
    SparseSupremum,
    exact_supremum,
    lq_aggregate,
    oscillation_scores,
    sharp_maximal,
    sparse_l2_norms,
    sr_norm_bruteforce,
    sr_norm_certified,
    sr_norm_family,
    sr_norm_maximal,
    sr_scores,
)
from apps.stability.services.corpus import CorpusSpec, corpus_generate

MONOTONE_PARAMS = [
    SRParams(1.0, 2.0, 0.0),
    SRParams(2.0, 2.0, 0.0),
    SRParams(1.5, 3.0, 1.0),
    SRParams(1.0, 1.0, -1.0),
    SRParams(1.2, 2.5, -0.5),
]


def unit_atom(J: int) -> GridFunction:
    values = np.zeros((1 << J, 1 << J))
    values[0, 0] = float(1 << (2 * J))
    return GridFunction(2, J, values, nonneg=True)


def chain(n: int, J: int):
    return [DyadicCube(level, (0,) * n) for level in range(J + 1)]


def random_grid(shape, seed: int) -> GridFunction:
    n, J = shape
    rng = np.random.default_rng(seed)
    return GridFunction(n, J, rng.random((1 << J,) * n) ** 3, nonneg=True)


def smooth_member(name: str, J: int) -> GridFunction:
    spec = {
        'constant': CorpusSpec('constant', 2, J),
        'gaussian': CorpusSpec('gaussian', 2, J, {'sigma': 0.2}),
        'bump': CorpusSpec('mollified_atom', 2, J, {'scales': [0.5]}),
    }[name]
    return corpus_generate(spec).members[0].f


def riesz_ratio(f: GridFunction, p: float) -> float:
    return sr_norm_certified(f, SRParams(p, p)).midpoint / lp_norm(f, p)


class ProgramHelpersTests(SimpleTestCase):

    def test_group_children_order(self):
        level = np.arange(16).reshape(4, 4)
        grouped = group_children(level, 2)
        self.assertEqual(grouped[0].tolist(), [0, 1, 4, 5])
        self.assertEqual(grouped[3].tolist(), [10, 11, 14, 15])

    def test_maxplus(self):
        a = np.array([[0.0, 1.0, 1.5]])
        b = np.array([[0.0, 2.0]])
        self.assertEqual(maxplus(a, b).tolist(), [[0.0, 2.0, 3.0, 3.5]])

    def test_program_rejects_bad_eta(self):
        with self.assertRaises(ParameterError):
            run_program([np.ones(1), np.ones(2)], 1, eta=0.0)

    def test_lq_aggregate(self):
        self.assertEqual(lq_aggregate([3.0], 2.0), 3.0)
        self.assertEqual(lq_aggregate([3.0, 4.0], 2.0), 5.0)
        self.assertAlmostEqual(lq_aggregate([1.0, 1.0], 1.0), 2.0)
        self.assertEqual(lq_aggregate([1.0, 7.0], math.inf), 7.0)


class FamilyRouteTests(SimpleTestCase):

    def test_chain_on_atom(self):
        family = SparseFamily.of(2, 2, chain(2, 2))
        value = sr_norm_family(unit_atom(2), family, SRParams(1.0, 2.0))
        self.assertAlmostEqual(value, math.sqrt(3.0), places=14)

    def test_leaves_on_constant(self):
        f = GridFunction(2, 2, np.ones((4, 4)))
        leaves = [DyadicCube(2, (i, j)) for i in range(4) for j in range(4)]
        value = sr_norm_family(f, SparseFamily.of(2, 2, leaves), SRParams(2.0, 2.0))
        self.assertAlmostEqual(value, 1.0, places=14)

    def test_root_gives_total_integral(self):
        f = random_grid((2, 2), 11)
        value = sr_norm_family(f, SparseFamily.of(2, 2, [DyadicCube.root(2)]), SRParams(1.0, 3.0))
        self.assertAlmostEqual(value, f.total_integral(), places=14)

    def test_unverified_family_is_refused(self):
        root = DyadicCube.root(2)
        family = SparseFamily.of(2, 1, [root] + root.children()[:3])
        with self.assertRaises(UnverifiedFamilyError):
            sr_norm_family(GridFunction(2, 1, np.ones((2, 2))), family, SRParams(1.0, 2.0))


class MaximalRouteTests(SimpleTestCase):

    def test_constant(self):
        bound = sr_norm_maximal(GridFunction(2, 3, np.ones((8, 8))), SRParams(2.0, 2.0))
        self.assertAlmostEqual(bound.value, 1.0, places=14)
        self.assertAlmostEqual(bound.upper, math.sqrt(2.0), places=14)

    def test_atom(self):
        bound = sr_norm_maximal(unit_atom(2), SRParams(1.0, 2.0))
        self.assertAlmostEqual(bound.value, math.sqrt(2.5), places=14)
        self.assertGreaterEqual(bound.upper, math.sqrt(3.0))

    def test_rejects_infinite_q(self):
        with self.assertRaises(ParameterError):
            sr_norm_maximal(unit_atom(2), SRParams(1.0, math.inf))


class BruteForceTests(SimpleTestCase):

    def test_constant_two_children(self):
        f = GridFunction(2, 1, np.ones((2, 2)))
        result = exact_supremum(sr_scores(f, SRParams(2.0, 2.0)), 2, 2.0)
        self.assertAlmostEqual(result.value, math.sqrt(1.5), places=14)
        self.assertEqual(len(result.family), 3)
        self.assertIn(DyadicCube.root(2), result.family.cubes)

    def test_atom_chain(self):
        self.assertAlmostEqual(sr_norm_bruteforce(unit_atom(2), SRParams(1.0, 2.0)), math.sqrt(3.0), places=14)

    def test_budget_refusal(self):
        with self.assertRaises(BudgetError):
            sr_norm_bruteforce(unit_atom(3), SRParams(1.0, 2.0))

    @override_settings(SPARSEKIT={'BRUTEFORCE_MAX_CUBES': 100})
    def test_budget_from_settings(self):
        self.assertAlmostEqual(sr_norm_bruteforce(unit_atom(3), SRParams(1.0, 2.0)), 2.0, places=14)

    def test_bracketing_on_constant(self):
        f = GridFunction(2, 1, np.ones((2, 2)))
        params = SRParams(1.0, 2.0)
        brute = sr_norm_bruteforce(f, params)
        root = DyadicCube.root(2)
        for cubes in ([root], root.children(), [root] + root.children()[:2]):
            self.assertLessEqual(sr_norm_family(f, SparseFamily.of(2, 1, cubes), params), brute + 1e-14)
        self.assertLessEqual(brute, math.sqrt(2.0) * sr_norm_maximal(f, params).value)

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(
        st.sampled_from([(1, 4), (2, 2), (1, 3)]),
        st.sampled_from(MONOTONE_PARAMS),
        st.integers(0, 2 ** 32 - 1),
    )
    def test_explicit_constant_inequality(self, shape, params, seed):
        f = random_grid(shape, seed)
        result = exact_supremum(sr_scores(f, params), f.n, params.q)
        self.assertTrue(verify_sparse(result.family).ok)
        self.assertAlmostEqual(sr_norm_family(f, result.family, params), result.value, places=10)
        bound = sr_norm_maximal(f, params)
        self.assertLessEqual(result.value ** params.q, 2.0 * bound.value ** params.q * (1.0 + 1e-10))

    def test_monotone_in_the_function(self):
        f = random_grid((2, 2), 3)
        g = GridFunction(2, 2, f.values + random_grid((2, 2), 4).values, nonneg=True)
        params = SRParams(1.0, 2.0)
        self.assertLessEqual(sr_norm_bruteforce(f, params), sr_norm_bruteforce(g, params))


class CertifiedIntervalTests(SimpleTestCase):

    def test_atom_strictness_is_exact(self):
        params = SRParams(1.0, 2.0)
        previous = 0.0
        for J in range(2, 7):
            interval = sr_norm_certified(unit_atom(J), params)
            self.assertAlmostEqual(interval.lower, math.sqrt(J + 1), places=14)
            self.assertGreater(interval.lower, previous)
            previous = interval.lower

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([(1, 4), (2, 2)]),
        st.sampled_from(MONOTONE_PARAMS),
        st.integers(0, 2 ** 32 - 1),
    )
    def test_contains_exact_supremum(self, shape, params, seed):
        f = random_grid(shape, seed)
        brute = sr_norm_bruteforce(f, params)
        interval = sr_norm_certified(f, params)
        self.assertTrue(interval.contains(brute, rel_tol=1e-12), (interval, brute))

    def test_witness_family_attains_lower_bound(self):
        f = random_grid((2, 4), 21)
        params = SRParams(1.0, 2.0)
        supremum = SparseSupremum.build(sr_scores(f, params), 2, 2.0)
        family = supremum.witness_family()
        self.assertAlmostEqual(sr_norm_family(f, family, params), supremum.interval().lower, places=12)

    def test_finer_budget_never_decreases(self):
        f = random_grid((1, 6), 8)
        params = SRParams(1.0, 2.0)
        coarse = sr_norm_certified(f, params, refinement=0).lower
        fine = sr_norm_certified(f, params, refinement=2).lower
        self.assertLessEqual(coarse, fine + 1e-14)

    def test_infinite_q_is_the_largest_score(self):
        f = unit_atom(2)
        interval = sr_norm_certified(f, SRParams(1.0, math.inf))
        self.assertEqual((interval.lower, interval.upper), (1.0, 1.0))


class SparseL2Tests(SimpleTestCase):

    def test_constant_has_no_oscillation(self):
        result = sparse_l2_norms(GridFunction(2, 3, np.full((8, 8), 3.0)))
        self.assertEqual(result['oscillation']['lower'], 0.0)
        self.assertEqual(result['oscillation']['upper'], 0.0)

    def test_identity_of_one_is_within_sparseness_factor(self):
        # leaves give 1 from below, η^{-1/2} ‖M 1‖_2 = √2 from above
        result = sparse_l2_norms(GridFunction(2, 3, np.ones((8, 8))))
        self.assertGreaterEqual(result['identity']['lower'], 1.0)
        self.assertLessEqual(result['identity']['upper'], math.sqrt(2.0) * (1 + 1e-14))

    def test_contains_exact_suprema(self):
        for seed in range(5):
            rng = np.random.default_rng(seed)
            f = GridFunction(2, 2, rng.normal(size=(4, 4)))
            result = sparse_l2_norms(f)
            table = build_table(f)
            identity = exact_supremum(sr_scores(f, SRParams(2.0, 2.0), table), 2, 2.0).value
            oscillation = exact_supremum(oscillation_scores(f, table), 2, 2.0).value
            self.assertTrue(result['identity']['lower'] <= identity * (1 + 1e-12))
            self.assertTrue(identity <= result['identity']['upper'] * (1 + 1e-12))
            self.assertTrue(result['oscillation']['lower'] <= oscillation * (1 + 1e-12))
            self.assertTrue(oscillation <= result['oscillation']['upper'] * (1 + 1e-12))

    def test_sharp_maximal_of_half_indicator(self):
        f = GridFunction(1, 2, [1.0, 1.0, 0.0, 0.0])
        np.testing.assert_allclose(sharp_maximal(f).values, 0.5)


class RieszEquivalenceTests(SimpleTestCase):

    def test_ratio_band_over_corpus(self):
        for p in (1.5, 2.0, 3.0):
            with self.subTest(p=p):
                ratios = [riesz_ratio(smooth_member(name, 6), p) for name in ('constant', 'gaussian', 'bump')]
                self.assertGreaterEqual(min(ratios), 1.0 - 1e-12)
                self.assertLessEqual(max(ratios) / min(ratios), 10.0)

    @hypothesis_settings(max_examples=9, deadline=None)
    @given(st.sampled_from(['constant', 'gaussian', 'bump']), st.sampled_from([1.5, 2.0, 3.0]))
    def test_ratio_stable_under_refinement(self, name, p):
        coarse = riesz_ratio(smooth_member(name, 4), p)
        fine = riesz_ratio(smooth_member(name, 8), p)
        self.assertLess(abs(fine - coarse), 0.2 * coarse)
