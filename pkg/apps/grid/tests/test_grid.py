"""
Tests for grid functions, integral tables, rearrangements and gradients.
"""
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from config.exceptions import ParameterError
from apps.grid.services.grid import (
    DyadicCube,
    GridFunction,
    build_table,
    coarsen,
    cube_average,
    discrete_gradient_l2,
    iter_cubes,
    oscillation_integral,
    oscillation_levels,
    rearrangement,
    sample_cell_centers,
    tree_size,
)


def unit_atom(n=2, J=2):
    values = np.zeros((1 << J,) * n)
    values[(0,) * n] = 2.0 ** (n * J)
    return GridFunction(n, J, values, nonneg=True)


cell_values = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


class DyadicCubeTests(SimpleTestCase):

    def test_measure_and_side(self):
        cube = DyadicCube(2, (1, 3))
        self.assertEqual(cube.measure, 1 / 16)
        self.assertEqual(cube.side, 0.25)

    def test_children_partition_parent(self):
        cube = DyadicCube(1, (1, 0))
        children = cube.children()
        self.assertEqual(len(children), 4)
        self.assertTrue(all(child.parent() == cube for child in children))
        self.assertAlmostEqual(sum(child.measure for child in children), cube.measure)

    def test_ancestor_and_contains(self):
        cell = DyadicCube(3, (5, 2))
        self.assertEqual(cell.ancestor(1), DyadicCube(1, (1, 0)))
        self.assertTrue(DyadicCube(1, (1, 0)).contains(cell))
        self.assertFalse(DyadicCube(1, (0, 0)).contains(cell))

    def test_index_out_of_range_rejected(self):
        with self.assertRaises(ParameterError):
            DyadicCube(1, (2, 0))

    def test_tree_enumeration_matches_size(self):
        self.assertEqual(len(list(iter_cubes(2, 2))), tree_size(2, 2))
        self.assertEqual(tree_size(1, 4), 31)
        self.assertEqual(tree_size(2, 2), 21)


class GridFunctionTests(SimpleTestCase):

    def test_length_mismatch_rejected(self):
        with self.assertRaises(ParameterError):
            GridFunction.from_flat(2, 2, np.ones(15))

    def test_negative_measure_rejected(self):
        with self.assertRaises(ParameterError):
            GridFunction(1, 1, [1.0, -1.0], nonneg=True)

    def test_dimension_limit(self):
        with self.assertRaises(ParameterError):
            GridFunction(4, 0, np.ones((1, 1, 1, 1)))

    def test_total_integral(self):
        self.assertEqual(unit_atom().total_integral(), 1.0)


class IntegralTableTests(SimpleTestCase):

    def test_constant_function(self):
        table = build_table(GridFunction(2, 2, np.ones((4, 4))))
        for cube in iter_cubes(2, 2):
            self.assertEqual(table.cube_integral(cube), 4.0 ** -cube.level)

    def test_unit_point_mass(self):
        table = build_table(unit_atom())
        for cube in iter_cubes(2, 2):
            expected = 1.0 if all(m == 0 for m in cube.index) else 0.0
            self.assertEqual(table.cube_integral(cube), expected)

    @given(arrays(np.float64, 8, elements=cell_values))
    @settings(max_examples=50, deadline=None)
    def test_matches_direct_summation(self, values):
        f = GridFunction(1, 3, values)
        table = build_table(f)
        for cube in iter_cubes(1, 3):
            direct = sum(abs(v) for v in values[cube.cell_slices(3)]) / 8
            self.assertAlmostEqual(table.cube_integral(cube), direct, places=12)

    @given(arrays(np.float64, (4, 4), elements=cell_values))
    @settings(max_examples=50, deadline=None)
    def test_additivity_is_exact(self, values):
        table = build_table(GridFunction(2, 2, values))
        for level in range(2):
            np.testing.assert_array_equal(coarsen(table.absolute[level + 1]), table.absolute[level])
            np.testing.assert_array_equal(coarsen(table.signed[level + 1]), table.signed[level])


class AverageAndOscillationTests(SimpleTestCase):

    def test_constant_has_zero_oscillation(self):
        f = GridFunction(2, 3, np.full((8, 8), 2.5))
        for cube in iter_cubes(2, 2):
            self.assertEqual(oscillation_integral(f, cube), 0.0)

    def test_two_level_function(self):
        f = GridFunction(1, 1, [1.0, 0.0])
        root = DyadicCube.root(1)
        self.assertEqual(cube_average(f, root), 0.5)
        self.assertEqual(oscillation_integral(f, root), 0.5)

    @given(arrays(np.float64, (4, 4), elements=cell_values))
    @settings(max_examples=50, deadline=None)
    def test_level_arrays_match_direct_evaluation(self, values):
        f = GridFunction(2, 2, values)
        levels = oscillation_levels(f)
        for cube in iter_cubes(2, 2):
            block = values[cube.cell_slices(2)]
            direct = np.abs(block - block.mean()).sum() / 16
            self.assertAlmostEqual(levels[cube.level][cube.index], direct, places=10)
            self.assertAlmostEqual(oscillation_integral(f, cube), direct, places=10)

    @given(
        arrays(np.float64, 8, elements=cell_values),
        st.floats(min_value=-50, max_value=50, allow_nan=False)
    )
    @settings(max_examples=50, deadline=None)
    def test_mean_comparison(self, values, c):
        f = GridFunction(1, 3, values)
        root = DyadicCube.root(1)
        against_c = np.abs(values - c).sum() / 8
        self.assertLessEqual(oscillation_integral(f, root), 2 * against_c + 1e-9)


class RearrangementTests(SimpleTestCase):

    def test_constant(self):
        arrangement = rearrangement(GridFunction(2, 2, np.ones((4, 4))))
        np.testing.assert_array_equal(arrangement.fstar, np.ones(16))
        np.testing.assert_allclose(arrangement.fstarstar, np.ones(16))

    def test_single_atom(self):
        arrangement = rearrangement(unit_atom())
        self.assertEqual(arrangement.fstar[0], 16.0)
        self.assertTrue(np.all(arrangement.fstar[1:] == 0))
        t = np.array([0.01, 1 / 16, 0.1, 0.5, 1.0])
        np.testing.assert_allclose(arrangement.fstarstar_at(t), np.minimum(16.0, 1.0 / t))

    @given(arrays(np.float64, 16, elements=cell_values))
    @settings(max_examples=50, deadline=None)
    def test_equimeasurable(self, values):
        f = GridFunction(2, 2, values.reshape(4, 4))
        arrangement = rearrangement(f)
        self.assertAlmostEqual(arrangement.primitive[-1], f.total_integral(), places=10)
        np.testing.assert_array_equal(np.sort(arrangement.fstar), np.sort(np.abs(values)))


class GradientTests(SimpleTestCase):

    def test_constant_gradient_vanishes(self):
        self.assertEqual(discrete_gradient_l2(GridFunction(2, 3, np.full((8, 8), 4.0))), 0.0)

    def test_sine_matches_difference_quotient(self):
        for J in (4, 6, 8):
            f = sample_cell_centers(2, J, lambda x, y: np.sin(2 * np.pi * x))
            h = 2.0 ** -J
            expected = math.sqrt(2) * math.sin(math.pi * h) / h
            self.assertAlmostEqual(discrete_gradient_l2(f) / expected, 1.0, places=10)
        self.assertAlmostEqual(expected, 2 * math.pi / math.sqrt(2), delta=1e-3)

    def test_single_cell_atom(self):
        self.assertAlmostEqual(discrete_gradient_l2(unit_atom()), 32.0)

    def test_three_dimensions_rejected(self):
        with self.assertRaises(ParameterError):
            discrete_gradient_l2(GridFunction(3, 1, np.ones((2, 2, 2))))
