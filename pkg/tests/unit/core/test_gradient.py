#
# SPDX-License-Identifier: Apache-2.0
import numpy as np
import testtools

from cape.core import gradient
from cape.core import utils


class NumericalJacobianTests(testtools.TestCase):
    def test_linear_map(self):
        a = np.array([[1.0, 2.0], [3.0, -1.0], [0.5, 0.0]])
        jac = gradient.numerical_jacobian(lambda x: a @ x, [0.3, -0.2])
        np.testing.assert_allclose(a, jac, atol=1e-9)

    def test_scalar_point(self):
        jac = gradient.numerical_jacobian(np.sin, 0.0)
        self.assertEqual((1, 1), jac.shape)
        self.assertAlmostEqual(1.0, jac[0, 0], places=9)

    def test_bad_step(self):
        self.assertRaises(
            utils.InvalidInputError,
            gradient.numerical_jacobian,
            np.sin,
            [0.0],
            0.0,
        )

    def test_nan_point(self):
        self.assertRaises(
            utils.InvalidInputError,
            gradient.numerical_jacobian,
            np.sin,
            [np.nan],
        )


class RelativeErrorTests(testtools.TestCase):
    def test_identical(self):
        self.assertEqual(0.0, gradient.relative_error(np.eye(2), np.eye(2)))

    def test_scaled_by_largest_entry(self):
        err = gradient.relative_error([[2.0, 0.0]], [[1.0, 0.0]])
        self.assertEqual(0.5, err)

    def test_all_zero(self):
        self.assertEqual(
            0.0, gradient.relative_error(np.zeros(3), np.zeros(3))
        )

    def test_shape_mismatch(self):
        self.assertRaises(
            utils.ShapeMismatchError,
            gradient.relative_error,
            np.zeros(2),
            np.zeros(3),
        )


class GradientCheckTests(testtools.TestCase):
    def test_matching_jacobian(self):
        error = gradient.gradient_check(
            lambda x: np.array([x[0] * x[1], np.exp(x[0])]),
            [0.5, 2.0],
            jacobian=lambda x: [[x[1], x[0]], [np.exp(x[0]), 0.0]],
        )
        self.assertLess(error, 1e-8)

    def test_wrong_jacobian_detected(self):
        error = gradient.gradient_check(
            np.sin, [0.4], jacobian=lambda x: -np.cos(x)
        )
        self.assertGreater(error, 1.0)

    def test_jacobian_required(self):
        self.assertRaises(
            utils.InvalidInputError, gradient.gradient_check, np.sin, [0.1]
        )
