#
# SPDX-License-Identifier: Apache-2.0
r"""
===================
Modality positions
===================

Raw positions before augmentation: token ordinals for text, patch grids
in [-1, 1] for images (independent of pixel resolution), and frame
timestamps in seconds for audio.

Also home of the padding-free batch planner. Every sample of a batch gets
its own hop distance so that it yields the frame count of a hypothetical
sample of mean duration at the base hop; frames are then skipped at random,
keeping temporal order, until all samples match the shortest one. Kept
frames keep their original timestamps.
"""
import json
import logging
import math

import numpy as np

from cape.core import augmentation
from cape.core import constants
from cape.core import rng as cape_rng
from cape.core import utils

LOG = logging.getLogger(__name__)

# guards floor(duration / hop) against division rounding
FRAME_COUNT_TOLERANCE = 1e-9


def _positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise utils.InvalidInputError(f"{name} must be an integer: {value!r}")
    if value < 1:
        raise utils.InvalidInputError(f"{name} must be >= 1, got {value}")
    return int(value)


def text_positions(n_tokens):
    """Ordinals 0 .. n_tokens - 1 as a single sequence."""
    n_tokens = _positive_int(n_tokens, "n_tokens")
    return augmentation.PositionSet1D(np.arange(n_tokens, dtype=np.float64))


def _axis(n_points):
    # one patch sits at the image centre
    if n_points == 1:
        return np.zeros(1)
    return np.linspace(-1.0, 1.0, n_points)


def image_positions(height_patches, width_patches):
    """Patch centre coordinates spanning [-1, 1] on both axes.

    x varies along columns and y along rows; the token order of the
    embedded grid is row-major.
    """
    height = _positive_int(height_patches, "height_patches")
    width = _positive_int(width_patches, "width_patches")
    x = np.broadcast_to(_axis(width)[None, :], (height, width))
    y = np.broadcast_to(_axis(height)[:, None], (height, width))
    return augmentation.PositionGrid2D(x, y)


def patches_per_side(resolution, patch_size=16):
    """Patch count along one side, e.g. 14 for 224 px with 16 px patches."""
    if resolution < patch_size or patch_size < 1:
        raise utils.InvalidInputError(
            f"Resolution {resolution} is smaller than patch {patch_size}"
        )
    return resolution // patch_size


def audio_positions(n_frames, hop, offset=0.0):
    """Frame timestamps ``offset + i * hop`` in seconds."""
    n_frames = _positive_int(n_frames, "n_frames")
    if not hop > 0:
        raise utils.InvalidInputError(f"hop must be positive: {hop}")
    return augmentation.PositionSet1D(
        offset + np.arange(n_frames, dtype=np.float64) * hop
    )


class BatchPlan:
    """Per-sample hops and frame masks for a padding-free audio batch."""

    def __init__(self, durations, base_hop, target_frames, hops, keep_masks):
        self.durations = [float(d) for d in durations]
        self.base_hop = float(base_hop)
        self.target_frames = int(target_frames)
        self.hops = [float(h) for h in hops]
        self.keep_masks = [np.asarray(m, dtype=bool) for m in keep_masks]

    @property
    def frame_counts(self):
        return [int(mask.sum()) for mask in self.keep_masks]

    def timestamps(self, index):
        """Original audio times of the frames kept for sample ``index``."""
        mask = self.keep_masks[index]
        return np.flatnonzero(mask) * self.hops[index]

    def as_dict(self):
        return {
            "durations": self.durations,
            "base_hop": self.base_hop,
            "target_frames": self.target_frames,
            "hops": self.hops,
            "keep_masks": [m.astype(int).tolist() for m in self.keep_masks],
        }

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["durations"],
            data["base_hop"],
            data["target_frames"],
            data["hops"],
            data["keep_masks"],
        )


def equalize_frame_counts(frame_counts, rng):
    """Keep masks that reduce every sample to the smallest frame count.

    Frames are skipped uniformly at random without replacement and the
    kept frames stay in temporal order. Sample ``i`` draws from
    ``rng.spawn(i)``.
    """
    counts = [int(c) for c in frame_counts]
    if not counts or min(counts) < 0:
        raise utils.InvalidInputError(f"Invalid frame counts: {counts}")
    keep = min(counts)
    masks = []
    for index, count in enumerate(counts):
        mask = np.zeros(count, dtype=bool)
        if count == keep:
            mask[:] = True
        else:
            draws = rng.spawn(index).random(count)
            chosen = np.argsort(draws, kind="stable")[:keep]
            mask[chosen] = True
            LOG.debug("sample %d: dropping %d frames", index, count - keep)
        masks.append(mask)
    return masks


def plan_padding_free_batch(durations, base_hop=constants.BASE_HOP, rng=None):
    """Plan per-sample hops so a batch needs no padding.

    :param durations: sample durations in seconds
    :param base_hop: hop of the hypothetical mean-duration sample
    :param rng: RngStream used for frame skipping
    :return: BatchPlan
    """
    durations = [float(d) for d in durations]
    if not durations:
        raise utils.InvalidInputError("Batch has no durations")
    if any(not d > 0 or math.isinf(d) for d in durations):
        raise utils.InvalidInputError(
            f"Durations must be positive: {durations}"
        )
    if not base_hop > 0:
        raise utils.InvalidInputError(f"base_hop must be positive: {base_hop}")

    # round() breaks ties to even
    target_frames = round(float(np.mean(durations)) / base_hop)
    if target_frames < 1:
        raise utils.InvalidInputError(
            f"Mean duration is shorter than one hop of {base_hop}s"
        )
    hops = [d / target_frames for d in durations]
    raw_counts = [
        math.floor(d / h + FRAME_COUNT_TOLERANCE)
        for d, h in zip(durations, hops)
    ]
    if rng is None:
        rng = cape_rng.RngStream()
    masks = equalize_frame_counts(raw_counts, rng)
    LOG.debug(
        "planned batch of %d samples at %d frames",
        len(durations),
        min(raw_counts),
    )
    return BatchPlan(durations, base_hop, target_frames, hops, masks)


class ShuffleSpec:
    def __init__(
        self,
        batch_size,
        perturbation_low=constants.PERTURBATION_LOW,
        perturbation_high=constants.PERTURBATION_HIGH,
    ):
        self.batch_size = _positive_int(batch_size, "batch_size")
        if not 0 < perturbation_low <= perturbation_high:
            raise utils.InvalidInputError(
                "Perturbation range must satisfy 0 < low <= high, got "
                f"[{perturbation_low}, {perturbation_high}]"
            )
        self.perturbation_low = float(perturbation_low)
        self.perturbation_high = float(perturbation_high)


def shuffle_by_perturbed_duration(durations, spec, rng):
    """Group samples of similar duration into batches.

    Each duration is multiplied by one draw from
    U(perturbation_low, perturbation_high), indices are stable-sorted by
    the perturbed value and cut into consecutive batches of
    ``spec.batch_size`` (the last one may be short). Pass
    ``rng.spawn(epoch)`` to reshuffle every epoch.
    """
    durations = np.asarray(durations, dtype=np.float64)
    if durations.size == 0:
        raise utils.InvalidInputError("No durations to shuffle")
    factors = rng.uniform(
        spec.perturbation_low, spec.perturbation_high, size=durations.shape
    )
    order = np.argsort(durations * factors, kind="stable")
    size = spec.batch_size
    return [order[i:i + size].tolist() for i in range(0, order.size, size)]
