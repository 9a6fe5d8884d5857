#
# SPDX-License-Identifier: Apache-2.0
r"""
=======================
C1001: File round trips
=======================

Embedding and position files are canonical: formatting a loaded file gives
back the same text. Positions are also reproduced exactly, and embeddings
to the printed precision. The sample includes NaN padding, a 2D grid and
augmented positions.
"""
import numpy as np

from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import embeddings
from cape.core import result
from cape.core import serialization


def _samples(stream):
    padded = stream.uniform(-50.0, 50.0, size=(3, 9))
    padded[2, -4:] = np.nan
    sets = [
        augmentation.PositionSet1D(padded),
        augmentation.augment_grid_2d(
            5, 2, augmentation.AugmentationConfig.for_grid(5), stream
        ),
    ]
    embs = [
        embeddings.embed_1d(padded, embeddings.FrequencySpec.text(16)),
        embeddings.embed_2d(sets[1], embeddings.FrequencySpec.image(12)),
    ]
    return sets, embs


@check.check_id("C1001")
@check.tags("files", "serialization")
def file_round_trip(context):
    sets, embs = _samples(context.stream())
    failures = 0
    for positions in sets:
        text = serialization.dumps_positions(positions)
        loaded = serialization.loads_positions(text)
        if serialization.dumps_positions(loaded) != text:
            failures += 1
        if loaded != positions:
            failures += 1
    for emb in embs:
        text = serialization.dumps_embedding(emb)
        loaded = serialization.loads_embedding(text)
        if serialization.dumps_embedding(loaded) != text:
            failures += 1
        if not np.allclose(
            loaded.matrix, emb.rows(), rtol=1e-11, atol=1e-11, equal_nan=True
        ):
            failures += 1
    return result.Measurement(failures, 0, detail="files that do not survive")
