"""
Tests for Littlewood–Paley blocks and the norms built on them.
"""
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from config.exceptions import ParameterError
from apps.grid.services.grid import GridFunction, sample_cell_centers
from apps.sequences.services.decay import exponential_decay, power_decay, shifted_power_decay
from apps.spectral.services.littlewood_paley import (
    BesovParams,
    besov_norm,
    block_count,
    dumps_block_csv,
    embedding_certificate,
    frequency_radius,
    lp_blocks,
    multiplier,
    nikolskii_ratio,
    spectral_norms,
    tpsi_blockwise,
    tpsi_fourier,
    tpsi_norm,
    vpsi_norm,
)


def random_grid(n: int, J: int, seed: int) -> GridFunction:
    rng = np.random.default_rng(seed)
    return GridFunction(n, J, rng.standard_normal((1 << J,) * n))


def gaussian(J: int) -> GridFunction:
    return sample_cell_centers(2, J, lambda x, y: np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / 0.02))


def atom(J: int) -> GridFunction:
    values = np.zeros((1 << J, 1 << J))
    values[0, 0] = 4.0 ** J
    return GridFunction(2, J, values)


def plane_wave(J: int, cycles: int) -> GridFunction:
    return sample_cell_centers(2, J, lambda x, y: np.sin(2.0 * np.pi * cycles * x))


PSI = shifted_power_decay(0.5)


class MultiplierTests(SimpleTestCase):

    def test_partition_of_unity_on_frequency_grid(self):
        for n, J in ((1, 6), (2, 5), (3, 3)):
            radius = frequency_radius(n, J, 2)
            total = sum(multiplier(j, radius) for j in range(block_count(n, J)))
            np.testing.assert_allclose(total, 1.0, atol=1e-14)

    def test_annulus_support(self):
        r = np.linspace(0.0, 64.0, 4097)
        for j in range(1, 6):
            phi = multiplier(j, r)
            self.assertTrue(np.all(phi[r < 2.0 ** (j - 1)] == 0.0))
            self.assertTrue(np.all(phi[r > 2.0 ** (j + 1)] == 0.0))
            self.assertTrue(np.all(phi >= 0.0))
        self.assertTrue(np.all(multiplier(0, r)[r > 2.0] == 0.0))

    def test_block_count_covers_nyquist(self):
        self.assertEqual(block_count(2, 8), 9)
        self.assertEqual(block_count(1, 1), 1)
        self.assertEqual(block_count(1, 0), 1)


class DecompositionTests(SimpleTestCase):

    @hypothesis_settings(max_examples=20, deadline=None)
    @given(st.sampled_from([(1, 6), (2, 4), (3, 2)]), st.integers(0, 2 ** 32 - 1))
    def test_reconstruction(self, shape, seed):
        n, J = shape
        f = random_grid(n, J, seed)
        decomposition = lp_blocks(f, padding=2)
        padded = np.zeros((2 << J,) * n)
        padded[(slice(0, 1 << J),) * n] = f.values
        scale = float(np.max(np.abs(padded)))
        np.testing.assert_allclose(decomposition.reconstruct(), padded, atol=1e-10 * scale)

    def test_plancherel_band(self):
        for seed in range(5):
            f = random_grid(2, 4, seed)
            decomposition = lp_blocks(f, padding=2)
            energy = float(np.sum(decomposition.l2_norms() ** 2))
            total = float(np.sum(f.values ** 2)) * f.cell_volume
            self.assertGreaterEqual(energy, 0.5 * total * (1 - 1e-12))
            self.assertLessEqual(energy, total * (1 + 1e-12))

    def test_constant_on_torus_is_one_block(self):
        f = GridFunction(2, 4, np.ones((16, 16)))
        decomposition = lp_blocks(f, periodic=True)
        np.testing.assert_allclose(decomposition.blocks[0], 1.0, atol=1e-12)
        for block in decomposition.blocks[1:]:
            self.assertLess(float(np.max(np.abs(block))), 1e-12)

    def test_plane_wave_lands_in_one_block(self):
        # 8 cycles sits where φ_3 = 1
        f = plane_wave(5, 8)
        decomposition = lp_blocks(f, periodic=True)
        l2 = decomposition.l2_norms()
        self.assertEqual(int(np.argmax(l2)), 3)
        self.assertAlmostEqual(l2[3], math.sqrt(0.5), places=12)
        self.assertLess(float(np.delete(l2, 3).max()), 1e-12)

    def test_rejects_padding_below_two(self):
        with self.assertRaises(ParameterError):
            lp_blocks(random_grid(1, 3, 0), padding=1)

    def test_descriptor_travels_with_blocks(self):
        decomposition = lp_blocks(random_grid(1, 4, 0), padding=3)
        self.assertEqual(decomposition.descriptor['profile'], 'quintic_smoothstep')
        self.assertEqual(decomposition.descriptor['padding'], 3)

    def test_block_csv(self):
        decomposition = lp_blocks(random_grid(1, 3, 1), padding=2)
        lines = dumps_block_csv(decomposition).splitlines()
        self.assertEqual(lines[0], 'j,linf,l2')
        self.assertEqual(len(lines), decomposition.j_max + 2)


class NormTests(SimpleTestCase):

    def test_zero_function(self):
        f = GridFunction(2, 4, np.zeros((16, 16)))
        decomposition = lp_blocks(f)
        self.assertEqual(vpsi_norm(decomposition, PSI), 0.0)
        self.assertEqual(tpsi_norm(decomposition, PSI), {'blockwise': 0.0, 'fourier': 0.0})
        self.assertEqual(besov_norm(decomposition, BesovParams(1.0, 2.0, 2.0)), 0.0)
        self.assertEqual(nikolskii_ratio(decomposition), 0.0)
        self.assertFalse(decomposition.truncated)

    def test_single_block_vpsi(self):
        K = 3
        f = plane_wave(5, 8)
        decomposition = lp_blocks(f, periodic=True)
        expected = 4.0 ** -K * decomposition.linf_norms()[K] / PSI(K) ** 2
        self.assertAlmostEqual(vpsi_norm(decomposition, PSI), expected, delta=1e-10)

    def test_single_block_nikolskii(self):
        decomposition = lp_blocks(plane_wave(5, 8), periodic=True)
        linf, l2 = decomposition.linf_norms()[3], decomposition.l2_norms()[3]
        self.assertAlmostEqual(nikolskii_ratio(decomposition), linf / (8.0 * l2), places=10)

    def test_besov_q_monotone(self):
        decomposition = lp_blocks(gaussian(5), padding=2)
        for s in (-1.0, 0.0, 0.5):
            infinite = besov_norm(decomposition, BesovParams(s, 2.0, math.inf))
            two = besov_norm(decomposition, BesovParams(s, 2.0, 2.0))
            one = besov_norm(decomposition, BesovParams(s, 2.0, 1.0))
            self.assertLessEqual(infinite, two * (1 + 1e-12))
            self.assertLessEqual(two, one * (1 + 1e-12))

    def test_besov_rejects_small_exponents(self):
        with self.assertRaises(ParameterError):
            BesovParams(0.0, 0.5, 2.0)

    def test_tpsi_forms_agree_within_band(self):
        ratios = []
        for f in (gaussian(5), atom(4), plane_wave(5, 3), random_grid(2, 4, 7)):
            decomposition = lp_blocks(f, padding=2)
            ratios.append(tpsi_blockwise(decomposition, PSI) / tpsi_fourier(decomposition, PSI))
        for ratio in ratios:
            self.assertGreater(ratio, 0.25)
            self.assertLess(ratio, 4.0)
        self.assertLess(max(ratios) / min(ratios), 6.0)

    def test_nikolskii_bounded_under_refinement(self):
        for J in (3, 4, 5, 6):
            for f in (gaussian(J), atom(J), random_grid(2, J, J)):
                self.assertLess(nikolskii_ratio(lp_blocks(f, padding=2)), 10.0)

    def test_nikolskii_needs_two_dimensions(self):
        with self.assertRaises(ParameterError):
            nikolskii_ratio(lp_blocks(random_grid(1, 4, 0)))

    def test_decay_table_must_reach_j_max(self):
        decomposition = lp_blocks(random_grid(2, 6, 0), padding=2)
        with self.assertRaises(ParameterError):
            vpsi_norm(decomposition, shifted_power_decay(0.5, n_max=3))


class EmbeddingCertificateTests(SimpleTestCase):

    @hypothesis_settings(max_examples=20, deadline=None)
    @given(st.integers(3, 5), st.integers(0, 2 ** 32 - 1))
    def test_vpsi_within_certified_bound(self, J, seed):
        decomposition = lp_blocks(random_grid(2, J, seed), padding=2)
        certificate = embedding_certificate(decomposition, exponential_decay(1.0), PSI)
        self.assertTrue(certificate.holds)
        self.assertLessEqual(certificate.vpsi, certificate.bound * (1 + 1e-9))

    def test_divergent_phi_refused(self):
        decomposition = lp_blocks(gaussian(4), padding=2)
        with self.assertRaises(ParameterError):
            embedding_certificate(decomposition, power_decay(1.0), PSI)


class SpectralReportTests(SimpleTestCase):

    def test_report_shape(self):
        report = spectral_norms(gaussian(4), PSI, BesovParams(0.0, 2.0, 2.0), padding=2)
        self.assertEqual(set(report['tpsi']), {'blockwise', 'fourier'})
        self.assertEqual(len(report['blocks']), report['j_max'] + 1)
        self.assertIn('besov', report)
        self.assertIn('nikolskii', report)
        self.assertEqual(report['profile']['profile'], 'quintic_smoothstep')

    def test_refinement_keeps_vpsi_stable_for_smooth_field(self):
        values = [vpsi_norm(lp_blocks(gaussian(J), padding=2), PSI) for J in (4, 5, 6)]
        self.assertLess(abs(values[2] - values[1]), 0.1 * values[1])
