"""
Tests for the maximal-operator endpoints.
"""
from rest_framework import status
from rest_framework.test import APISimpleTestCase


ONES = {'n': 2, 'J': 2, 'values': [1.0] * 16, 'nonneg': True}
ATOM = {'n': 2, 'J': 2, 'values': [16.0] + [0.0] * 15, 'nonneg': True}


class MaximalViewTests(APISimpleTestCase):

    def test_dyadic_maximal_of_constant(self):
        response = self.client.post('/v1/maximal/dyadic/', {'grid': ONES, 'lam': 0.0}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data['values']), 16)
        self.assertAlmostEqual(response.data['sup'], 1.0, places=14)

    def test_lambda_outside_range(self):
        response = self.client.post('/v1/maximal/dyadic/', {'grid': ONES, 'lam': 2.0}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('error', response.data)

    def test_fractional_maximal_of_atom(self):
        response = self.client.post('/v1/maximal/fractional/', {'grid': ATOM, 'lam': 0.0}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['sup'], 16.0, places=12)

    def test_sobolev_norm(self):
        response = self.client.post(
            '/v1/maximal/sobolev/', {'grid': ATOM, 'lam': 1.0, 'padding': 2}, format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertGreater(response.data['value'], 0.0)
        self.assertEqual(response.data['padding'], 2)
        self.assertIsNotNone(response.data['ratio'])

    def test_fourier_route_needs_q_two(self):
        response = self.client.post(
            '/v1/maximal/sobolev/', {'grid': ATOM, 'lam': 1.0, 'q': 3.0, 'route': 'fourier'}, format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('q', response.data['error']['message'])
