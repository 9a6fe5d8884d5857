#
# SPDX-License-Identifier: Apache-2.0
r"""
===============
Gradient checks
===============

Central finite differences against analytic Jacobians.

The relative error of a check is
``max|J_analytic - J_numeric| / max(max|J_analytic|, max|J_numeric|)``,
so a Jacobian that is zero almost everywhere is not penalised for
rounding noise in the few entries that are not.
"""
import logging

import numpy as np

from cape.core import utils

LOG = logging.getLogger(__name__)

DEFAULT_STEP = 1e-5


def numerical_jacobian(fun, x, step=DEFAULT_STEP):
    """Central-difference Jacobian of ``fun`` at ``x``.

    :param fun: callable mapping an array shaped like ``x`` to an array
    :param x: point, any shape; it is flattened for the input axis
    :param step: finite-difference step
    :return: (out.size, x.size) matrix
    """
    if not step > 0:
        raise utils.InvalidInputError(f"step must be positive: {step}")
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.isnan(x).any():
        raise utils.InvalidInputError(
            "Cannot differentiate at a point containing NaN"
        )

    base = np.ravel(fun(x))
    jac = np.zeros((base.size, x.size))
    e = np.zeros(x.size)
    for i in range(x.size):
        e[i] = step
        plus = np.ravel(fun(x + e.reshape(x.shape)))
        minus = np.ravel(fun(x - e.reshape(x.shape)))
        jac[:, i] = (plus - minus) / (2.0 * step)
        e[i] = 0.0
    return jac


def relative_error(analytic, numeric):
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    if analytic.shape != numeric.shape:
        raise utils.ShapeMismatchError(
            f"Jacobian shapes differ: {analytic.shape} != {numeric.shape}"
        )
    scale = max(np.abs(analytic).max(), np.abs(numeric).max())
    scale = max(scale, np.finfo(np.float64).tiny)
    return float(np.abs(analytic - numeric).max() / scale)


def gradient_check(fun, point, step=DEFAULT_STEP, jacobian=None):
    """Compare an analytic Jacobian with central differences.

    :param fun: function under test
    :param point: where to evaluate
    :param step: finite-difference step, must be > 0
    :param jacobian: callable returning the analytic Jacobian at
        ``point``, shaped (out.size, point.size) or reshapeable to it
    :return: max relative error
    """
    point = np.atleast_1d(np.asarray(point, dtype=np.float64))
    numeric = numerical_jacobian(fun, point, step)
    if jacobian is None:
        raise utils.InvalidInputError("An analytic jacobian is required")
    analytic = np.asarray(jacobian(point), dtype=np.float64)
    analytic = analytic.reshape(numeric.shape)
    error = relative_error(analytic, numeric)
    LOG.debug("gradient check at %d inputs: %.3e", point.size, error)
    return error
