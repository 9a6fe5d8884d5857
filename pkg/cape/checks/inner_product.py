#
# SPDX-License-Identifier: Apache-2.0
r"""
===================================
C301 - C303: Translation invariance
===================================

Dot products of sinusoidal embeddings depend only on the difference of the
positions, because ``cos a cos b + sin a sin b = cos(a - b)``. C301 checks
this for 1D text and audio positions, C302 for image coordinates shifted
by the same (dx, dy), and C303 for attention logits built purely from
embedding dot products when a whole sequence or grid is shifted.

**Config Options:**

.. code-block:: yaml

    translation_invariance:
      samples: 200
      dim: 64
      tokens: 16
      tolerance: 1.0e-9
"""
import numpy as np

from cape.core import attention
from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import embeddings
from cape.core import positions
from cape.core import result


def gen_config(name):
    if name == "translation_invariance":
        return {"samples": 200, "dim": 64, "tokens": 16, "tolerance": 1e-9}


def _row_dots(first, second):
    return np.einsum("...k,...k->...", first.matrix, second.matrix)


@check.takes_config("translation_invariance")
@check.check_id("C301")
@check.tags("inner_product", "embeddings")
def dot_product_1d(context, config):
    stream = context.stream()
    n = config["samples"]
    worst = 0.0
    specs = [
        (embeddings.FrequencySpec.text(config["dim"]), 1000.0),
        (embeddings.FrequencySpec.audio(config["dim"]), 60.0),
    ]
    for spec, bound in specs:
        a = stream.uniform(-bound, bound, size=n)
        b = stream.uniform(-bound, bound, size=n)
        s = stream.uniform(-bound, bound, size=n)
        before = _row_dots(
            embeddings.embed_1d(a, spec), embeddings.embed_1d(b, spec)
        )
        after = _row_dots(
            embeddings.embed_1d(a + s, spec),
            embeddings.embed_1d(b + s, spec),
        )
        worst = max(worst, float(np.abs(before - after).max()))
    return result.Measurement(
        worst, config["tolerance"], detail="max |E(a).E(b) - E(a+s).E(b+s)|"
    )


@check.takes_config("translation_invariance")
@check.check_id("C302")
@check.tags("inner_product", "embeddings")
def dot_product_2d(context, config):
    stream = context.stream()
    n = config["samples"]
    spec = embeddings.FrequencySpec.image(config["dim"])
    coords = [stream.uniform(-1.0, 1.0, size=(1, n)) for _ in range(6)]
    x1, y1, x2, y2, dx, dy = coords

    def embed(x, y):
        return embeddings.embed_2d(augmentation.PositionGrid2D(x, y), spec)

    before = _row_dots(embed(x1, y1), embed(x2, y2))
    after = _row_dots(embed(x1 + dx, y1 + dy), embed(x2 + dx, y2 + dy))
    return result.Measurement(
        float(np.abs(before - after).max()),
        config["tolerance"],
        detail="max |E(p).E(q) - E(p+d).E(q+d)|",
    )


@check.takes_config("translation_invariance")
@check.check_id("C303")
@check.tags("inner_product", "attention")
def logits_shift_invariance(context, config):
    stream = context.stream()
    dim, n = config["dim"], config["tokens"]
    worst = 0.0

    spec = embeddings.FrequencySpec.text(dim)
    base = positions.text_positions(n).values
    for shift in stream.uniform(-500.0, 500.0, size=8):
        before = attention.attention_logits(embeddings.embed_1d(base, spec))
        after = attention.attention_logits(
            embeddings.embed_1d(base + shift, spec)
        )
        worst = max(worst, float(np.abs(before - after).max()))

    spec = embeddings.FrequencySpec.image(dim)
    side = int(np.sqrt(n)) or 1
    grid = positions.image_positions(side, side)
    for dx, dy in stream.uniform(-1.0, 1.0, size=(8, 2)):
        shifted = augmentation.PositionGrid2D(grid.x + dx, grid.y + dy)
        before = attention.attention_logits(embeddings.embed_2d(grid, spec))
        after = attention.attention_logits(embeddings.embed_2d(shifted, spec))
        worst = max(worst, float(np.abs(before - after).max()))

    return result.Measurement(
        worst, config["tolerance"], detail="max logit change under shift"
    )
