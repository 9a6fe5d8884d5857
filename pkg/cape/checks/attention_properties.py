#
# SPDX-License-Identifier: Apache-2.0
r"""
=======================================
C801 - C804: Attention layer properties
=======================================

- C801 without positional information the layer is exactly
  permutation-equivariant: every permutation of up to 6 tokens and random
  permutations of 64 tokens give bit-identical permuted outputs
- C802 with sinusoidal positions added, permuting the tokens but not the
  positions changes the output by more than 1e-6
- C803 softmax rows sum to one, with and without masked keys
- C804 relative offsets beyond the maximum context reuse the boundary
  offset, and the gathered relative logits match the explicit table

**Config Options:**

.. code-block:: yaml

    attention_properties:
      d_model: 16
      exhaustive_tokens: 6
      random_tokens: 64
      random_permutations: 100
      relpos_context: 4
"""
import itertools

import numpy as np

from cape.core import attention
from cape.core import check_properties as check
from cape.core import constants
from cape.core import embeddings
from cape.core import positions
from cape.core import result


def gen_config(name):
    if name == "attention_properties":
        return {
            "d_model": 16,
            "exhaustive_tokens": 6,
            "random_tokens": 64,
            "random_permutations": 100,
            "relpos_context": 4,
        }


def _permutation_mismatches(tokens, params, perm):
    out = attention.encode(tokens, None, params)
    permuted = attention.encode(tokens[perm], None, params)
    return int(not np.array_equal(permuted, out[perm]))


@check.takes_config("attention_properties")
@check.check_id("C801")
@check.tags("attention", "equivariance")
def permutation_equivariance(context, config):
    stream = context.stream()
    d = config["d_model"]
    params = attention.AttentionParams.random(d, stream, constants.NOPOS)
    mismatches = 0
    for n in range(1, config["exhaustive_tokens"] + 1):
        tokens = stream.uniform(-1.0, 1.0, size=(n, d))
        for perm in itertools.permutations(range(n)):
            mismatches += _permutation_mismatches(
                tokens, params, np.array(perm)
            )
    n = config["random_tokens"]
    tokens = stream.uniform(-1.0, 1.0, size=(n, d))
    for _ in range(config["random_permutations"]):
        perm = np.argsort(stream.random(n), kind="stable")
        mismatches += _permutation_mismatches(tokens, params, perm)
    return result.Measurement(
        mismatches, 0, detail="permutations with non-identical output"
    )


@check.takes_config("attention_properties")
@check.check_id("C802")
@check.tags("attention", "sensitivity")
def positional_sensitivity(context, config):
    stream = context.stream()
    d, n = config["d_model"], 8
    params = attention.AttentionParams.random(d, stream, constants.ADDPOS)
    spec = embeddings.FrequencySpec.text(d)
    pos_emb = embeddings.embed_1d(positions.text_positions(n), spec).rows()
    tokens = stream.uniform(-1.0, 1.0, size=(n, d))
    perm = np.roll(np.arange(n), 1)

    out = attention.encode(tokens, pos_emb, params)
    permuted = attention.encode(tokens[perm], pos_emb, params)
    return result.Measurement(
        float(np.abs(permuted - out[perm]).max()),
        1e-6,
        comparison=result.ABOVE,
        detail="output change when positions stay put",
    )


@check.check_id("C803")
@check.tags("attention", "softmax")
def softmax_rows(context):
    stream = context.stream()
    worst = 0.0
    for scale in (1.0, 30.0, 700.0):
        logits = stream.uniform(-scale, scale, size=(32, 32))
        mask = stream.random(32) < 0.3
        mask[0] = False
        for key_mask in (None, mask):
            weights = attention.softmax(logits, key_mask)
            worst = max(worst, float(np.abs(weights.sum(axis=1) - 1).max()))
            if key_mask is not None and weights[:, key_mask].any():
                worst = np.inf
    return result.Measurement(worst, 1e-12, detail="max |row sum - 1|")


@check.takes_config("attention_properties")
@check.check_id("C804")
@check.tags("attention", "relpos")
def relpos_clipping(context, config):
    stream = context.stream()
    d, c = config["d_model"], config["relpos_context"]
    table = attention.RelposTable.random(c, d, stream)
    n = 4 * c + 3
    offsets = table.key_offsets(n)
    distance = np.arange(n)[None, :] - np.arange(n)[:, None]

    worst = 0.0
    for beyond, boundary in ((distance > c, c), (distance < -c, -c)):
        expected = table.offsets[boundary + c]
        if beyond.any():
            worst = max(
                worst, float(np.abs(offsets[beyond] - expected).max())
            )

    q = stream.uniform(-1.0, 1.0, size=(n, d))
    explicit = np.einsum("id,ijd->ij", q, offsets)
    worst = max(
        worst, float(np.abs(table.relative_logits(q) - explicit).max())
    )
    return result.Measurement(
        worst, 1e-12, detail="max deviation from boundary offsets"
    )
