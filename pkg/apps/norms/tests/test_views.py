"""
Tests for the classical-norm endpoint.
"""
import math

from rest_framework import status
from rest_framework.test import APISimpleTestCase


ATOM = {'n': 2, 'J': 2, 'values': [16.0] + [0.0] * 15}


class NormViewTests(APISimpleTestCase):

    def post(self, payload):
        return self.client.post('/v1/norms/', payload, format='json')

    def test_morrey_witness(self):
        response = self.post({'grid': ATOM, 'space': 'morrey', 'p': 1.0, 'alpha': 1.0, 'q': None})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['value'], 1.0 + 4.0 * math.log(2.0), places=12)
        self.assertEqual(response.data['witness'], [[2, 0, 0]])
        self.assertIsNone(response.data['q'])

    def test_rmt_atom(self):
        response = self.post({'grid': ATOM, 'space': 'rmt', 'p': 1.0, 'q': 2.0})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['value'], 1.0, places=12)
        self.assertEqual(response.data['route'], 'dp')

    def test_lorentz_extras(self):
        response = self.post({'grid': ATOM, 'space': 'lorentz'})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(
            response.data['extras']['l1inf_log_half'], math.sqrt(1.0 + math.log(16.0)), places=12
        )

    def test_congruent_needs_finite_q(self):
        response = self.post({'grid': ATOM, 'space': 'crmt', 'q': None})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('q', response.data['error']['message'])

    def test_unknown_space(self):
        response = self.post({'grid': ATOM, 'space': 'besov'})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
