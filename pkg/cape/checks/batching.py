#
# SPDX-License-Identifier: Apache-2.0
r"""
=====================================
C901 - C903: Audio batching and grids
=====================================

- C901 a padding-free plan for 8, 10 and 12 s of audio at a 10 ms base hop
  targets 1000 frames with hops of 8, 10 and 12 ms; after masking every
  sample has the same frame count and each kept timestamp is the original
  audio time of its frame. Random batches are planned as well.
- C902 duration-perturbed shuffling yields a partition of the indices, and
  groups similar durations more tightly than random batching
- C903 image patch grids depend only on patch counts, which scale with
  resolution (14 patches at 224 px, 24 at 384 px)

**Config Options:**

.. code-block:: yaml

    batching:
      random_batches: 20
      shuffle_samples: 10000
      batch_size: 32
"""
import math

import numpy as np

from cape.core import check_properties as check
from cape.core import positions
from cape.core import result


def gen_config(name):
    if name == "batching":
        return {
            "random_batches": 20,
            "shuffle_samples": 10000,
            "batch_size": 32,
        }


def _plan_violations(plan):
    violations = 0
    counts = plan.frame_counts
    if len(set(counts)) != 1:
        violations += 1
    for i, mask in enumerate(plan.keep_masks):
        kept = np.flatnonzero(mask)
        if not mask.size:
            violations += 1
            continue
        audio = positions.audio_positions(mask.size, plan.hops[i])
        if not np.allclose(plan.timestamps(i), audio.values[0][kept]):
            violations += 1
        if kept.size and kept[-1] * plan.hops[i] > plan.durations[i]:
            violations += 1
    return violations


@check.takes_config("batching")
@check.check_id("C901")
@check.tags("batching", "audio")
def padding_free_plan(context, config):
    stream = context.stream()
    plan = positions.plan_padding_free_batch([8.0, 10.0, 12.0], 0.010, stream)
    violations = _plan_violations(plan)
    if plan.target_frames != 1000:
        violations += 1
    if not np.allclose(plan.hops, [0.008, 0.010, 0.012], rtol=0, atol=1e-15):
        violations += 1

    for _ in range(config["random_batches"]):
        size = 1 + int(stream.random() * 8)
        durations = stream.uniform(1.0, 20.0, size=size)
        plan = positions.plan_padding_free_batch(durations, 0.010, stream)
        violations += _plan_violations(plan)
    return result.Measurement(violations, 0, detail="plan violations")


def _mean_spread(durations, batches):
    ratios = [
        durations[b].max() / durations[b].min() for b in batches if len(b)
    ]
    return float(np.mean(ratios))


@check.takes_config("batching")
@check.check_id("C902")
@check.tags("batching", "shuffle")
def shuffle_partition(context, config):
    stream = context.stream()
    n = config["shuffle_samples"]
    durations = stream.uniform(1.0, 20.0, size=n)
    spec = positions.ShuffleSpec(config["batch_size"])
    batches = positions.shuffle_by_perturbed_duration(durations, spec, stream)

    violations = 0
    flat = sorted(i for b in batches for i in b)
    if flat != list(range(n)):
        violations += 1
    if any(len(b) != spec.batch_size for b in batches[:-1]):
        violations += 1

    order = np.argsort(stream.random(n), kind="stable")
    size = spec.batch_size
    random_batches = [order[i:i + size] for i in range(0, n, size)]
    if _mean_spread(durations, batches) >= _mean_spread(
        durations, random_batches
    ):
        violations += 1
    return result.Measurement(violations, 0, detail="partition violations")


@check.check_id("C903")
@check.tags("batching", "image")
def grid_resolution_independence(context):
    violations = 0
    for resolution, expected in ((224, 14), (384, 24), (672, 42)):
        side = positions.patches_per_side(resolution)
        if side != expected:
            violations += 1
        grid = positions.image_positions(side, side)
        for axis in (grid.x, grid.y):
            if not np.array_equal(axis[0, [0, -1], [0, -1]], [-1.0, 1.0]):
                violations += 1
        step = grid.x[0, 0, 1] - grid.x[0, 0, 0]
        if not math.isclose(step, 2.0 / (side - 1), rel_tol=1e-12):
            violations += 1
    return result.Measurement(violations, 0, detail="grid violations")
