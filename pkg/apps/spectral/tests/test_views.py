"""
Tests for the spectral endpoints.
"""
import numpy as np
from rest_framework import status
from rest_framework.test import APISimpleTestCase


def gaussian_payload(J: int = 4):
    centers = (np.arange(1 << J) + 0.5) / (1 << J)
    x, y = np.meshgrid(centers, centers, indexing='ij')
    values = np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / 0.02)
    return {'n': 2, 'J': J, 'values': values.ravel().tolist()}


class SpectralNormViewTests(APISimpleTestCase):

    def test_default_decay(self):
        response = self.client.post('/v1/spectral/norms/', {'grid': gaussian_payload()}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertGreater(response.data['vpsi'], 0.0)
        self.assertEqual(set(response.data['tpsi']), {'blockwise', 'fourier'})
        self.assertEqual(len(response.data['blocks']), response.data['j_max'] + 1)
        self.assertEqual(response.data['profile']['profile'], 'quintic_smoothstep')

    def test_besov_and_certificate(self):
        payload = {
            'grid': gaussian_payload(),
            'decay': {'kind': 'shifted_power', 'parameter': 0.5},
            'phi': {'kind': 'exponential', 'parameter': 1.0},
            's': 0.0,
            'padding': 2,
        }
        response = self.client.post('/v1/spectral/norms/', payload, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertIn('besov', response.data)
        certificate = response.data['certificate']
        self.assertLessEqual(certificate['vpsi'], certificate['bound'] * (1 + 1e-9))

    def test_padding_below_two_rejected(self):
        response = self.client.post(
            '/v1/spectral/norms/', {'grid': gaussian_payload(), 'padding': 1}, format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('error', response.data)

    def test_increasing_decay_rejected(self):
        payload = {'grid': gaussian_payload(), 'decay': {'kind': 'tabulated', 'values': [1.0, 2.0]}}
        response = self.client.post('/v1/spectral/norms/', payload, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class HaarViewTests(APISimpleTestCase):

    def test_parseval_reported(self):
        values = [1.0, 3.0, -2.0, 0.0]
        response = self.client.post('/v1/spectral/haar/', {'grid': {'n': 1, 'J': 2, 'values': values}}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['mean'], 0.5, places=14)
        self.assertAlmostEqual(response.data['energy'], sum(v * v for v in values) / 4, places=12)
        self.assertEqual(len(response.data['levels']), 2)
        self.assertEqual(response.data['levels'][0]['1'], [1.5])
