#
# SPDX-License-Identifier: Apache-2.0
r"""
===============================
C401, C402: Frequency schedules
===============================

Audio frequencies start at exactly 30 rad/s and strictly decrease. Image
frequency magnitudes strictly increase from ``10 ** (1 / (K/2))`` to 10, and
their direction angles (``j`` radians mod 2 pi) are pairwise distinct.
"""
import numpy as np

from cape.core import check_properties as check
from cape.core import constants
from cape.core import embeddings
from cape.core import result

DIMS = (2, 4, 64, 128, 720)


@check.check_id("C401")
@check.tags("frequencies", "embeddings")
def audio_frequency_schedule(context):
    violations = 0
    for dim in DIMS:
        omega = embeddings.FrequencySpec.audio(dim).omega
        if omega[0] != constants.AUDIO_SCALE:
            violations += 1
        if omega.size > 1 and not (np.diff(omega) < 0).all():
            violations += 1
    return result.Measurement(
        violations, 0, detail="audio schedules with a bad first or order"
    )


@check.check_id("C402")
@check.tags("frequencies", "embeddings")
def image_frequency_schedule(context):
    violations = 0
    for dim in DIMS:
        spec = embeddings.FrequencySpec.image(dim)
        half = spec.half
        rho = np.hypot(spec.w_x, spec.w_y)
        if half > 1 and not (np.diff(rho) > 0).all():
            violations += 1
        if not np.isclose(rho[0], 10 ** (1 / half), rtol=1e-12):
            violations += 1
        if not np.isclose(rho[-1], constants.IMAGE_MAX_FREQUENCY, rtol=1e-12):
            violations += 1
        angles = np.mod(np.arange(half), 2 * np.pi)
        if half <= 360 and np.unique(angles).size != half:
            violations += 1
    return result.Measurement(
        violations, 0, detail="image schedules breaking magnitude or angle"
    )
