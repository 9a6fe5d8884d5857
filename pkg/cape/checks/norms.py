#
# SPDX-License-Identifier: Apache-2.0
r"""
===========================
C101, C102: Embedding norms
===========================

Every (cos, sin) column pair of a non-padding token lies on the unit circle,
so each row has Euclidean norm ``sqrt(K / 2)``. Checked on random text,
audio and image embeddings, with NaN padding mixed into the 1D sets.

**Config Options:**

.. code-block:: yaml

    unit_circle_norms:
      samples: 200
      dims: [2, 64, 768]
      tolerance: 1.0e-12
    row_norms:
      samples: 200
      dims: [2, 64, 768]
      tolerance: 1.0e-9
"""
import numpy as np

from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import embeddings
from cape.core import result


def gen_config(name):
    if name == "unit_circle_norms":
        return {"samples": 200, "dims": [2, 64, 768], "tolerance": 1e-12}
    if name == "row_norms":
        return {"samples": 200, "dims": [2, 64, 768], "tolerance": 1e-9}


def _embeddings(stream, samples, dims):
    for dim in dims:
        text = stream.uniform(-1e4, 1e4, size=samples)
        text[::7] = np.nan
        yield embeddings.embed_1d(text, embeddings.FrequencySpec.text(dim))

        audio = stream.uniform(0.0, 60.0, size=samples)
        yield embeddings.embed_1d(audio, embeddings.FrequencySpec.audio(dim))

        x = stream.uniform(-3.0, 3.0, size=(1, samples))
        y = stream.uniform(-3.0, 3.0, size=(1, samples))
        grid = augmentation.PositionGrid2D(x, y)
        yield embeddings.embed_2d(grid, embeddings.FrequencySpec.image(dim))


@check.takes_config
@check.check_id("C101")
@check.tags("norms", "embeddings")
def unit_circle_norms(context, config):
    stream = context.stream()
    worst = 0.0
    for emb in _embeddings(stream, config["samples"], config["dims"]):
        rows = emb.rows()[~emb.padding_rows()]
        half = emb.dim // 2
        pairs = rows[:, :half] ** 2 + rows[:, half:] ** 2
        worst = max(worst, float(np.abs(pairs - 1.0).max()))
    return result.Measurement(
        worst, config["tolerance"], detail="max |cos^2 + sin^2 - 1|"
    )


@check.takes_config
@check.check_id("C102")
@check.tags("norms", "embeddings")
def row_norms(context, config):
    stream = context.stream()
    worst = 0.0
    for emb in _embeddings(stream, config["samples"], config["dims"]):
        padding = emb.padding_rows()
        rows = emb.rows()[~padding]
        norms = np.linalg.norm(rows, axis=1)
        worst = max(worst, float(np.abs(norms - np.sqrt(emb.dim / 2)).max()))
        if padding.any() and not np.isnan(emb.rows()[padding]).all():
            return result.Measurement(
                np.nan, config["tolerance"], detail="padding row not NaN"
            )
    return result.Measurement(
        worst, config["tolerance"], detail="max |row norm - sqrt(K/2)|"
    )
