#
# SPDX-License-Identifier: Apache-2.0
r"""
===================================
C201, C202: Relative shift rotation
===================================

Shifting a position by ``m`` rotates every (cos, sin) pair by
``omega_k * m``, so ``embed(p + m) == shift_apply(embed(p), m)``. The
check draws random pairs for a text spec (|p|, |m| up to 10^4) and an
audio spec (up to 60 s). C202 verifies that rotating by ``m`` and then
by ``-m`` gives back the original embedding.

With ``--self-test-negative`` C201 rotates by ``-m`` instead, which must
make it fail.

**Config Options:**

.. code-block:: yaml

    shift_identity:
      samples: 500
      dim: 64
      text_range: 10000.0
      audio_range: 60.0
      tolerance: 1.0e-9
"""
import numpy as np

from cape.core import check_properties as check
from cape.core import embeddings
from cape.core import result


def gen_config(name):
    if name == "shift_identity":
        return {
            "samples": 500,
            "dim": 64,
            "text_range": 1e4,
            "audio_range": 60.0,
            "tolerance": 1e-9,
        }


def _specs(config):
    dim = config["dim"]
    return [
        (embeddings.FrequencySpec.text(dim), config["text_range"]),
        (embeddings.FrequencySpec.audio(dim), config["audio_range"]),
    ]


@check.takes_config
@check.check_id("C201")
@check.tags("shift", "embeddings")
def shift_identity(context, config):
    stream = context.stream()
    sign = -1.0 if context.negative else 1.0
    worst = 0.0
    for spec, bound in _specs(config):
        p = stream.uniform(-bound, bound, size=config["samples"])
        m = stream.uniform(-bound, bound, size=config["samples"])
        direct = embeddings.embed_1d(p + m, spec)
        rotated = embeddings.shift_apply(
            embeddings.embed_1d(p, spec), sign * m, spec
        )
        worst = max(
            worst, float(np.abs(direct.matrix - rotated.matrix).max())
        )
    return result.Measurement(
        worst, config["tolerance"], detail="max |E(p+m) - S^m E(p)|"
    )


@check.takes_config("shift_identity")
@check.check_id("C202")
@check.tags("shift", "embeddings")
def shift_inverse(context, config):
    stream = context.stream()
    worst = 0.0
    for spec, bound in _specs(config):
        p = stream.uniform(-bound, bound, size=config["samples"])
        m = stream.uniform(-bound, bound, size=config["samples"])
        emb = embeddings.embed_1d(p, spec)
        back = embeddings.shift_apply(
            embeddings.shift_apply(emb, m, spec), -m, spec
        )
        worst = max(worst, float(np.abs(back.matrix - emb.matrix).max()))
    return result.Measurement(
        worst, config["tolerance"], detail="max |S^-m S^m E - E|"
    )
