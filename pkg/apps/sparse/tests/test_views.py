"""
Tests for the sparse endpoints.
"""
import math

from rest_framework import status
from rest_framework.test import APISimpleTestCase


ATOM = {'n': 2, 'J': 2, 'values': [16.0] + [0.0] * 15}


class DominateViewTests(APISimpleTestCase):

    def test_atom_family(self):
        response = self.client.post(
            '/v1/sparse/dominate/',
            {'grid': ATOM, 'p': 1.0, 'q': 2.0},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['family'], [[0, 0, 0], [2, 0, 0]])
        self.assertTrue(response.data['sparse'])
        self.assertLessEqual(response.data['max_ratio'], 1.0)

    def test_non_monotone_regime_is_refused(self):
        response = self.client.post(
            '/v1/sparse/dominate/',
            {'grid': ATOM, 'p': 2.0, 'q': 2.0, 'alpha': 1.0},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data['error']['code'], 400)


class SRNormViewTests(APISimpleTestCase):

    def test_bruteforce_on_atom(self):
        response = self.client.post(
            '/v1/sparse/norm/',
            {'grid': ATOM, 'p': 1.0, 'q': 2.0, 'method': 'bruteforce'},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['value'], math.sqrt(3.0), places=12)
        self.assertEqual(len(response.data['family']), 3)

    def test_bruteforce_budget_is_422(self):
        grid = {'n': 2, 'J': 3, 'values': [1.0] * 64}
        response = self.client.post(
            '/v1/sparse/norm/',
            {'grid': grid, 'p': 1.0, 'q': 2.0, 'method': 'bruteforce'},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)

    def test_family_route_needs_family(self):
        response = self.client.post(
            '/v1/sparse/norm/',
            {'grid': ATOM, 'p': 1.0, 'method': 'family'},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_family_route(self):
        response = self.client.post(
            '/v1/sparse/norm/',
            {'grid': ATOM, 'p': 1.0, 'method': 'family', 'family': [[0, 0, 0], [1, 0, 0]]},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data['value'], math.sqrt(2.0), places=12)

    def test_certified_route(self):
        response = self.client.post(
            '/v1/sparse/norm/',
            {'grid': ATOM, 'p': 1.0, 'q': 2.0},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        certified = response.data['certified']
        self.assertLessEqual(certified['lower'], certified['upper'])


class SparseL2ViewTests(APISimpleTestCase):

    def test_constant(self):
        response = self.client.post(
            '/v1/sparse/l2/',
            {'grid': {'n': 1, 'J': 3, 'values': [2.0] * 8}},
            format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['oscillation']['upper'], 0.0)
