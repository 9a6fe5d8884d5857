#
# SPDX-License-Identifier: Apache-2.0
r"""
====================================
C601 - C606: Augmentation properties
====================================

Statistical and structural guarantees of the augmentation pipeline:

- C601 inference mode ignores the seed and only mean-normalizes
- C602 mean-normalization is idempotent
- C603 unit-gap tokens (and 10 ms frames) stay strictly ordered when the
  local shift is at most half the gap
- C604 global shifts and log-scales have zero mean: over ``draws`` samples
  the empirical mean stays within 3 sigma / sqrt(n); the measured value is
  the worse of the two ratios to that bound
- C605 the same seed reproduces bit-identical 1D and 2D outputs
- C606 translation pairs share one shift and one scale, replayed from the
  recorded draws

**Config Options:**

.. code-block:: yaml

    augmentation_properties:
      batch: 16
      tokens: 32
      draws: 100000
      max_scale: 1.4
"""
import math

import numpy as np

from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import constants
from cape.core import positions
from cape.core import result
from cape.core import rng as cape_rng


def gen_config(name):
    if name == "augmentation_properties":
        return {"batch": 16, "tokens": 32, "draws": 100000, "max_scale": 1.4}


def _random_positions(stream, config, pad=True):
    values = stream.uniform(
        -100.0, 100.0, size=(config["batch"], config["tokens"])
    )
    if pad:
        # trailing padding, as in a right-padded batch
        values[1:, -3:] = np.nan
    return values


def _max_difference(first, second):
    first = np.asarray(first)
    second = np.asarray(second)
    if not np.array_equal(np.isnan(first), np.isnan(second)):
        return math.inf
    both = ~np.isnan(first)
    if not both.any():
        return 0.0
    return float(np.abs(first[both] - second[both]).max())


@check.takes_config("augmentation_properties")
@check.check_id("C601")
@check.tags("augmentation", "inference")
def inference_seed_free(context, config):
    stream = context.stream()
    values = _random_positions(stream, config)
    cfg = augmentation.AugmentationConfig(
        max_global_shift=10.0,
        max_local_shift=1.0,
        max_scale=2.0,
        mean_normalize=True,
        mode=constants.INFERENCE,
    )
    worst = 0.0
    expected = augmentation.mean_normalize_positions(values)
    for seed in stream.next_uint64(4):
        out = augmentation.augment_positions_1d(
            values, cfg.replace(seed=int(seed)), cape_rng.RngStream(seed)
        )
        worst = max(worst, _max_difference(out.values, expected))
    return result.Measurement(worst, 0.0, detail="max change across seeds")


@check.takes_config("augmentation_properties")
@check.check_id("C602")
@check.tags("augmentation", "mean_normalize")
def mean_normalize_idempotent(context, config):
    values = _random_positions(context.stream(), config)
    once = augmentation.mean_normalize_positions(values)
    twice = augmentation.mean_normalize_positions(once)
    return result.Measurement(
        _max_difference(once, twice), 1e-12, detail="max |N(N(p)) - N(p)|"
    )


@check.takes_config("augmentation_properties")
@check.check_id("C603")
@check.tags("augmentation", "order")
def order_preservation(context, config):
    stream = context.stream()
    batch, n = config["batch"], config["tokens"]
    cases = [
        (
            positions.text_positions(n).values.repeat(batch, axis=0),
            augmentation.AugmentationConfig(
                max_global_shift=5.0,
                max_local_shift=0.5,
                max_scale=config["max_scale"],
                mean_normalize=False,
            ),
        ),
        (
            positions.audio_positions(n, constants.BASE_HOP)
            .values.repeat(batch, axis=0),
            augmentation.get_preset("asr-tl"),
        ),
    ]
    violations = 0
    for values, cfg in cases:
        out = augmentation.augment_positions_1d(values, cfg, stream)
        violations += int((np.diff(out.values, axis=1) <= 0).sum())
    return result.Measurement(
        violations, 0, detail="adjacent pairs out of order"
    )


@check.takes_config("augmentation_properties")
@check.check_id("C604")
@check.tags("augmentation", "statistics")
def zero_mean_draws(context, config):
    stream = context.stream()
    n = config["draws"]
    max_shift, max_scale = 1.0, config["max_scale"]

    shifts = augmentation.augment_positions_1d(
        np.zeros((n, 1)),
        augmentation.AugmentationConfig(
            max_global_shift=max_shift, max_scale=1.0, mean_normalize=False
        ),
        stream,
    ).values
    log_scales = np.log(
        augmentation.augment_positions_1d(
            np.ones((n, 1)),
            augmentation.AugmentationConfig(
                max_scale=max_scale, mean_normalize=False
            ),
            stream,
        ).values
    )

    ratios = []
    for samples, half_width in (
        (shifts, max_shift),
        (log_scales, math.log(max_scale)),
    ):
        sigma = half_width / math.sqrt(3.0)
        bound = 3.0 * sigma / math.sqrt(n)
        ratios.append(abs(float(samples.mean())) / bound)
    return result.Measurement(
        max(ratios), 1.0, detail="|mean| / (3 sigma / sqrt(n))"
    )


@check.takes_config("augmentation_properties")
@check.check_id("C605")
@check.tags("augmentation", "determinism")
def augmentation_determinism(context, config):
    values = _random_positions(context.stream(), config)
    cfg = augmentation.AugmentationConfig(
        max_global_shift=5.0,
        max_local_shift=0.5,
        max_scale=config["max_scale"],
        seed=context.seed,
    )
    grid_cfg = augmentation.AugmentationConfig.for_grid(14, seed=context.seed)
    mismatches = 0
    first = augmentation.augment_positions_1d(values, cfg)
    second = augmentation.augment_positions_1d(values, cfg)
    mismatches += int(first != second)
    first = augmentation.augment_grid_2d(14, config["batch"], grid_cfg)
    second = augmentation.augment_grid_2d(14, config["batch"], grid_cfg)
    mismatches += int(first != second)
    return result.Measurement(mismatches, 0, detail="runs that differ")


@check.takes_config("augmentation_properties")
@check.check_id("C606")
@check.tags("augmentation", "translation")
def mt_pair_synchronisation(context, config):
    stream = context.stream()
    seed = stream.next_uint64()
    batch = config["batch"]
    src = np.tile(np.arange(7.0), (batch, 1))
    tgt = np.tile(np.arange(5.0), (batch, 1))
    alpha = constants.MT_SOURCE_SCALE["de"]
    cfg = augmentation.get_preset("mt").replace(max_scale=config["max_scale"])
    out_src, out_tgt = augmentation.augment_mt_pair(
        src, tgt, alpha, cfg, cape_rng.RngStream(seed)
    )

    replay = cape_rng.RngStream(seed)
    local = constants.MT_LOCAL_SHIFT
    log_scale = math.log(cfg.max_scale)
    delta = replay.uniform(
        -cfg.max_global_shift, cfg.max_global_shift, size=(batch, 1)
    )
    eps_src = replay.uniform(-local, local, size=src.shape)
    eps_tgt = replay.uniform(-local, local, size=tgt.shape)
    lam = np.exp(replay.uniform(-log_scale, log_scale, size=(batch, 1)))

    worst = max(
        _max_difference(out_src.values, lam * (alpha * src + delta + eps_src)),
        _max_difference(out_tgt.values, lam * (tgt + delta + eps_tgt)),
    )
    if np.abs(np.concatenate([eps_src, eps_tgt], axis=1)).max() > local:
        worst = math.inf
    return result.Measurement(worst, 1e-12, detail="max replay difference")
