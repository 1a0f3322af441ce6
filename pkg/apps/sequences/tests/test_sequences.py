"""
Tests for v_Ψ, t_Ψ, K-functionals and the separating examples.
"""
import itertools
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.numpy import arrays

from config.exceptions import ParameterError
from apps.sequences.services.decay import exponential_decay, power_decay, shifted_power_decay
from apps.sequences.services.sequences import (
    BlockSequence,
    besov_weights,
    embedding_check,
    extrapolation_norm,
    k_functional,
    telescoping_coefficients,
    tpsi_not_vpsi_example,
    tpsi_seq,
    vpsi_not_tpsi_example,
    vpsi_profile,
    vpsi_seq,
)


def split_oracle(t, a, w0, w1):
    """Minimum over every vertex splitting; each coordinate goes wholly to one side."""
    best = math.inf
    for sides in itertools.product((0, 1), repeat=len(a)):
        cost = sum(abs(x) * (t * v1 if side else v0) for x, v0, v1, side in zip(a, w0, w1, sides))
        best = min(best, cost)
    return best


class SequenceNormTests(SimpleTestCase):

    def test_single_entry(self):
        psi = shifted_power_decay(0.5)
        seq = BlockSequence.from_scalars([1.0])
        self.assertEqual(vpsi_seq(seq, psi), 1.0)
        self.assertEqual(tpsi_seq(seq, psi), 1.0)

    def test_sequence_longer_than_table(self):
        with self.assertRaises(ParameterError):
            vpsi_seq(BlockSequence.from_scalars(np.ones(10)), shifted_power_decay(0.5, n_max=4))

    def test_sup_and_energy_per_scale(self):
        seq = BlockSequence([np.array([1.0, -3.0]), np.array([[2.0, 0.0], [0.0, 1.0]])])
        np.testing.assert_array_equal(seq.sup_per_scale(), [3.0, 2.0])
        np.testing.assert_array_equal(seq.energy_per_scale(), [10.0, 5.0])


class SeparatingExampleTests(SimpleTestCase):

    def test_telescoping_identity(self):
        psi = shifted_power_decay(1.0)
        c = telescoping_coefficients(psi)
        tails = np.cumsum((c ** 2)[::-1])[::-1]
        np.testing.assert_allclose(tails, psi.squared(), rtol=1e-12)

    def test_in_tpsi_not_in_vpsi(self):
        report = tpsi_not_vpsi_example(shifted_power_decay(1.0))
        self.assertAlmostEqual(report['tpsi'], 1.0, delta=1e-10)
        ratios = report['vpsi_profile']
        self.assertGreaterEqual(ratios[32], 5.0 * ratios[4])

    def test_in_vpsi_not_in_tpsi(self):
        psi = shifted_power_decay(0.5)
        rows = vpsi_not_tpsi_example(psi)['windows']
        self.assertEqual(rows[-1]['width'], 2 ** 10)
        for row in rows:
            self.assertEqual(row['vpsi'], 1.0)
            self.assertAlmostEqual(row['tpsi'], math.sqrt(row['width']), places=10)


class KFunctionalTests(SimpleTestCase):

    def test_single_coordinate(self):
        w0, w1 = besov_weights(3, 0.0)
        for t in (0.1, 0.5, 1.0, 3.0):
            self.assertEqual(k_functional(t, [1.0, 0.0, 0.0], w0, w1), min(1.0, t))

    def test_two_coordinates(self):
        w0, w1 = besov_weights(2, 0.0)
        self.assertEqual(k_functional(0.5, [1.0, 1.0], w0, w1), 0.75)

    def test_rejects_non_positive_t(self):
        with self.assertRaises(ParameterError):
            k_functional(0.0, [1.0], [1.0], [1.0])

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(
        st.integers(1, 6).flatmap(lambda size: st.tuples(
            arrays(np.float64, size, elements=st.floats(0.0, 10.0)),
            arrays(np.float64, size, elements=st.floats(0.01, 10.0)),
            arrays(np.float64, size, elements=st.floats(0.01, 10.0)),
        )),
        st.floats(1e-3, 1e3),
    )
    def test_matches_splitting_oracle(self, data, t):
        a, w0, w1 = data
        self.assertAlmostEqual(k_functional(t, a, w0, w1), split_oracle(t, a, w0, w1), delta=1e-12 * (1 + a.sum() * 1e3))

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(arrays(np.float64, 6, elements=st.floats(0.0, 5.0)))
    def test_concave_and_increasing(self, a):
        w0, w1 = besov_weights(6, 0.0)
        t = np.geomspace(1e-4, 10.0, 40)
        values = np.array([k_functional(x, a, w0, w1) for x in t])
        self.assertTrue(np.all(np.diff(values) >= -1e-12))
        self.assertTrue(np.all(np.diff(values / t) <= 1e-12))
        chords = 0.5 * (values[:-2] + values[2:])
        midpoints = np.array([k_functional(0.5 * (t[i] + t[i + 2]), a, w0, w1) for i in range(t.size - 2)])
        self.assertTrue(np.all(midpoints >= chords - 1e-12))


class ExtrapolationTests(SimpleTestCase):

    def test_zero(self):
        self.assertEqual(extrapolation_norm(np.zeros(5), shifted_power_decay(0.5)), 0.0)

    def test_single_coordinate_closed_form(self):
        psi = shifted_power_decay(0.5)
        K = 3
        a = np.zeros(6)
        a[K] = 1.0
        expected = max(min(4.0 ** -K, 4.0 ** -N) / psi(N) ** 2 for N in range(psi.n_max + 1))
        self.assertAlmostEqual(extrapolation_norm(a, psi), expected, places=14)

    def test_refuses_non_doubling_decay(self):
        with self.assertRaises(ParameterError):
            extrapolation_norm([1.0, 1.0], exponential_decay(0.75))

    def test_equivalence_band(self):
        psi = shifted_power_decay(0.5)
        rng = np.random.default_rng(7)
        ratios = []
        for _ in range(200):
            size = int(rng.integers(1, 20))
            a = rng.random(size) * 4.0 ** np.arange(size) * rng.random()
            ratios.append(extrapolation_norm(a, psi) / vpsi_seq(BlockSequence.from_scalars(a), psi))
        self.assertGreaterEqual(min(ratios), 1.0 - 1e-12)
        self.assertLessEqual(max(ratios) / min(ratios), 4.0)


class EmbeddingCheckTests(SimpleTestCase):

    def test_geometric_tail(self):
        check = embedding_check(exponential_decay(1.0), exponential_decay(0.5))
        self.assertTrue(check.holds)
        self.assertAlmostEqual(check.constant, 2.0, places=10)

    def test_harmonic_series_diverges(self):
        for alpha in (0.5, 1.0):
            check = embedding_check(power_decay(alpha), shifted_power_decay(0.5))
            self.assertTrue(check.divergent)
            self.assertFalse(check.holds)

    def test_square_of_flat_decay(self):
        psi = shifted_power_decay(1.0)
        phi = shifted_power_decay(2.0)
        check = embedding_check(phi, psi)
        self.assertFalse(check.divergent)
        expected = max(float(np.sum(phi.values[N:])) / psi(N) ** 2 for N in range(65))
        np.testing.assert_allclose(check.constant, expected, rtol=1e-12)
