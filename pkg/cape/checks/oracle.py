#
# SPDX-License-Identifier: Apache-2.0
r"""
===============================
C701, C702: Reference agreement
===============================

Compares ``augment_positions_1d`` and ``augment_grid_2d`` with a direct,
deliberately naive numpy rendition of the original reference functions fed
from the same random stream. Configurations are random: batch sizes,
sequence lengths, ranges, both modes, with and without mean-normalization,
and right-padded (NaN) rows in the 1D case.

The grid rendition puts x along columns, the axis convention used
throughout this package.

**Config Options:**

.. code-block:: yaml

    reference_agreement:
      configs: 100
      tolerance: 1.0e-12
"""
import numpy as np

from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import constants
from cape.core import result
from cape.core import rng as cape_rng


def gen_config(name):
    if name == "reference_agreement":
        return {"configs": 100, "tolerance": 1e-12}


def reference_augment_1d(
    positions_1d,
    mean_normalize,
    augment,
    max_global_shift,
    max_local_shift,
    max_scale,
    rng,
):
    assert max_scale >= 1
    batch_size, n_tokens = positions_1d.shape
    if mean_normalize:
        positions_1d = positions_1d - np.nanmean(
            positions_1d, axis=1, keepdims=True
        )
    if augment:
        delta = rng.uniform(
            -max_global_shift, +max_global_shift, size=[batch_size, 1]
        )
        delta_local = rng.uniform(
            -max_local_shift, +max_local_shift, size=[batch_size, n_tokens]
        )
        log_lambdas = rng.uniform(
            -np.log(max_scale), +np.log(max_scale), size=[batch_size, 1]
        )
        new_positions = (positions_1d + delta + delta_local) * np.exp(
            log_lambdas
        )
        return new_positions
    else:
        return positions_1d


def reference_grid_2d(
    n_patches,
    batch_size,
    augment,
    max_global_shift,
    max_local_shift,
    max_scale,
    rng,
):
    x = np.zeros([batch_size, n_patches, n_patches])
    y = np.zeros([batch_size, n_patches, n_patches])
    x += np.linspace(-1, 1, n_patches)[None, None, :]
    y += np.linspace(-1, 1, n_patches)[None, :, None]
    if augment:
        # global shift
        x += rng.uniform(
            -max_global_shift, +max_global_shift, size=[batch_size, 1, 1]
        )
        y += rng.uniform(
            -max_global_shift, +max_global_shift, size=[batch_size, 1, 1]
        )
        # local shift
        x += rng.uniform(-max_local_shift, +max_local_shift, size=x.shape)
        y += rng.uniform(-max_local_shift, +max_local_shift, size=y.shape)
        # scaling
        lambdas = np.exp(
            rng.uniform(
                -np.log(max_scale), +np.log(max_scale), size=[batch_size, 1, 1]
            )
        )
        x *= lambdas
        y *= lambdas
    return x, y


def _random_config(stream):
    draws = stream.random(6)
    return augmentation.AugmentationConfig(
        max_global_shift=float(draws[0] * 50.0),
        max_local_shift=float(draws[1] * 2.0),
        max_scale=float(1.0 + draws[2] * 2.0),
        mean_normalize=bool(draws[3] < 0.5),
        mode=constants.TRAIN if draws[4] < 0.8 else constants.INFERENCE,
        seed=stream.next_uint64(),
    )


def _worst(first, second):
    if not np.array_equal(np.isnan(first), np.isnan(second)):
        return np.inf
    valid = ~np.isnan(first)
    if not valid.any():
        return 0.0
    return float(np.abs(first[valid] - second[valid]).max())


@check.takes_config("reference_agreement")
@check.check_id("C701")
@check.tags("oracle", "augmentation")
def reference_agreement_1d(context, config):
    stream = context.stream()
    worst = 0.0
    for _ in range(config["configs"]):
        cfg = _random_config(stream)
        batch = 1 + int(stream.random() * 4)
        n_tokens = 1 + int(stream.random() * 20)
        values = stream.uniform(-100.0, 100.0, size=(batch, n_tokens))
        for row in range(batch):
            n_pad = int(stream.random() * n_tokens)
            if n_pad:
                values[row, n_tokens - n_pad:] = np.nan

        ours = augmentation.augment_positions_1d(
            values, cfg, cape_rng.RngStream(cfg.seed)
        ).values
        theirs = reference_augment_1d(
            values.copy(),
            cfg.mean_normalize,
            cfg.augment,
            cfg.max_global_shift,
            cfg.max_local_shift,
            cfg.max_scale,
            cape_rng.RngStream(cfg.seed),
        )
        worst = max(worst, _worst(ours, theirs))
    return result.Measurement(
        worst, config["tolerance"], detail="max difference to reference, 1D"
    )


@check.takes_config("reference_agreement")
@check.check_id("C702")
@check.tags("oracle", "augmentation")
def reference_agreement_2d(context, config):
    stream = context.stream()
    worst = 0.0
    for _ in range(config["configs"]):
        cfg = _random_config(stream)
        batch = 1 + int(stream.random() * 4)
        n_patches = 1 + int(stream.random() * 16)

        ours = augmentation.augment_grid_2d(
            n_patches, batch, cfg, cape_rng.RngStream(cfg.seed)
        )
        x, y = reference_grid_2d(
            n_patches,
            batch,
            cfg.augment,
            cfg.max_global_shift,
            cfg.max_local_shift,
            cfg.max_scale,
            cape_rng.RngStream(cfg.seed),
        )
        worst = max(worst, _worst(ours.x, x), _worst(ours.y, y))
    return result.Measurement(
        worst, config["tolerance"], detail="max difference to reference, 2D"
    )
