#
# SPDX-License-Identifier: Apache-2.0
r"""
=======================
Position augmentation
=======================

Train-time augmentation of positions before they are embedded:

i) mean-normalization (subtract the padding-ignoring mean of each row),
ii) global shift ``delta ~ U(-max_global_shift, max_global_shift)`` per row,
iii) local shift ``eps_i ~ U(-max_local_shift, max_local_shift)`` per token,
iv) global scaling ``log(lambda) ~ U(-log(max_scale), log(max_scale))`` per
row, applied last: ``(p + delta + eps) * lambda``.

In inference mode only mean-normalization is applied.

Draw order is frozen so runs are reproducible from a seed:

- 1D: all global shifts (one per row), all local shifts (row-major), all
  log-scales (one per row).
- 2D: x global shifts, y global shifts, x local shifts, y local shifts,
  log-scales. One scale per batch element is shared by both axes.
- MT pairs: global shifts, source local shifts, target local shifts,
  log-scales.

Draws are consumed even when a range is collapsed to zero, and padding
(NaN) tokens still consume their local-shift draw.
"""
import json
import logging
import math

import numpy as np

from cape.core import constants
from cape.core import rng as cape_rng
from cape.core import utils

LOG = logging.getLogger(__name__)

CONFIG_FIELDS = (
    "max_global_shift",
    "max_local_shift",
    "max_scale",
    "mean_normalize",
    "augment",
    "seed",
)


class AugmentationConfig:
    def __init__(
        self,
        max_global_shift=0.0,
        max_local_shift=0.0,
        max_scale=1.0,
        mean_normalize=True,
        mode=constants.TRAIN,
        seed=0,
    ):
        """Augmentation ranges and mode.

        :param max_global_shift: global shift range, position units
        :param max_local_shift: local shift range, position units
        :param max_scale: global scale range, must be >= 1
        :param mean_normalize: subtract the mean position of each row
        :param mode: train or inference
        :param seed: 64-bit unsigned seed for the default stream
        :raises InvalidInputError: when a field is out of range
        """
        if mode not in (constants.TRAIN, constants.INFERENCE):
            raise utils.InvalidInputError(f"Unknown mode: {mode}")
        for name, value in (
            ("max_global_shift", max_global_shift),
            ("max_local_shift", max_local_shift),
        ):
            if not _is_real(value) or value < 0:
                raise utils.InvalidInputError(
                    f"{name} must be a non-negative number: {value!r}"
                )
        if not _is_real(max_scale) or max_scale < 1:
            raise utils.InvalidInputError(
                f"max_scale must be >= 1: {max_scale!r}"
            )
        if not isinstance(mean_normalize, bool):
            raise utils.InvalidInputError(
                f"mean_normalize must be a boolean: {mean_normalize!r}"
            )
        self.max_global_shift = float(max_global_shift)
        self.max_local_shift = float(max_local_shift)
        self.max_scale = float(max_scale)
        self.mean_normalize = mean_normalize
        self.mode = mode
        self.seed = utils.parse_seed(seed)

    @property
    def augment(self):
        return self.mode == constants.TRAIN

    @classmethod
    def from_dict(cls, data):
        """Build from the JSON object form; unknown keys are an error."""
        if not isinstance(data, dict):
            raise utils.InvalidInputError("Config must be a JSON object")
        unknown = sorted(set(data) - set(CONFIG_FIELDS))
        if unknown:
            raise utils.InvalidInputError(
                f"Unknown config keys: {', '.join(unknown)}"
            )
        kwargs = {k: v for k, v in data.items() if k != "augment"}
        if "augment" in data:
            if not isinstance(data["augment"], bool):
                raise utils.InvalidInputError("augment must be a boolean")
            kwargs["mode"] = (
                constants.TRAIN if data["augment"] else constants.INFERENCE
            )
        return cls(**kwargs)

    @classmethod
    def from_json_file(cls, path):
        return cls.from_file_data(read_json_config(path), path)

    @classmethod
    def from_file_data(cls, data, path):
        """Like from_dict, with errors reported against ``path``."""
        try:
            return cls.from_dict(data)
        except utils.InvalidInputError as err:
            raise utils.ConfigError(str(err), path)

    @classmethod
    def for_grid(cls, n_patches, augment=True, seed=0):
        """Image defaults: 0.5 global, 1/P local, 1.4 scale."""
        preset = dict(constants.PRESETS[constants.VIT_PRESET])
        preset["max_local_shift"] = 1.0 / n_patches
        preset["augment"] = augment
        preset["seed"] = seed
        return cls.from_dict(preset)

    def as_dict(self):
        return {
            "max_global_shift": self.max_global_shift,
            "max_local_shift": self.max_local_shift,
            "max_scale": self.max_scale,
            "mean_normalize": self.mean_normalize,
            "augment": self.augment,
            "seed": self.seed,
        }

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def replace(self, **changes):
        data = self.as_dict()
        data.update(changes)
        return AugmentationConfig.from_dict(data)

    def __eq__(self, other):
        return self.as_dict() == other.as_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"AugmentationConfig({self.as_dict()})"


def _is_real(value):
    return (
        isinstance(value, (int, float, np.floating, np.integer))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def read_json_config(path):
    """Parsed contents of a JSON augmentation config file."""
    try:
        with open(path) as f:
            return json.load(f)
    except OSError:
        raise utils.ConfigError("Could not read config file.", path)
    except ValueError as err:
        LOG.error(err)
        raise utils.ConfigError("Error parsing file.", path)


def get_preset(name, config=None, n_patches=None):
    """Look up an augmentation preset, project config first.

    The built-in ``vit`` preset takes its local shift range from the grid
    when ``n_patches`` is given, so it stays 1/P for any grid size.

    :param name: preset name
    :param config: optional CapeConfig whose ``profiles`` take precedence
    :param n_patches: patches per side of the image grid, if known
    :raises ProfileNotFound: when neither source knows the name
    """
    profiles = {}
    config_file = None
    if config is not None:
        profiles = config.get_option("profiles") or {}
        config_file = config.config_file
    data = profiles.get(name)
    if data is None:
        data = constants.PRESETS.get(name)
        if data is None:
            raise utils.ProfileNotFound(config_file, name)
        if name == constants.VIT_PRESET and n_patches:
            data = dict(data, max_local_shift=1.0 / n_patches)
    LOG.debug("using augmentation profile '%s': %s", name, data)
    try:
        return AugmentationConfig.from_dict(dict(data))
    except utils.InvalidInputError as err:
        raise utils.ConfigError(f"profile {name}: {err}", config_file)


class PositionSet1D:
    """Batch of 1D position sequences; NaN marks padding."""

    def __init__(self, values):
        values = np.array(values, dtype=np.float64)
        if values.ndim == 1:
            values = values[None, :]
        if values.ndim != 2:
            raise utils.ShapeMismatchError(
                f"Positions must be (batch, tokens): {values.shape}"
            )
        if values.shape[0] == 0 or values.shape[1] == 0:
            raise utils.InvalidInputError("Position set is empty")
        if np.isinf(values).any():
            raise utils.InvalidInputError("Positions must be finite or NaN")
        self.values = values

    @property
    def batch(self):
        return self.values.shape[0]

    @property
    def n_tokens(self):
        return self.values.shape[1]

    def __eq__(self, other):
        return np.array_equal(self.values, other.values, equal_nan=True)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"PositionSet1D(batch={self.batch}, n_tokens={self.n_tokens})"


class PositionGrid2D:
    """Paired x/y patch coordinates of shape (batch, rows, cols)."""

    def __init__(self, x, y):
        x = np.array(x, dtype=np.float64)
        y = np.array(y, dtype=np.float64)
        if x.shape != y.shape:
            raise utils.ShapeMismatchError(
                f"Grid x shape {x.shape} does not match y shape {y.shape}"
            )
        if x.ndim == 2:
            x, y = x[None], y[None]
        if x.ndim != 3:
            raise utils.ShapeMismatchError(
                f"Grid must be (batch, rows, cols): {x.shape}"
            )
        self.x = x
        self.y = y

    @property
    def batch(self):
        return self.x.shape[0]

    @property
    def shape(self):
        return self.x.shape[1:]

    @property
    def n_tokens(self):
        return self.x.shape[1] * self.x.shape[2]

    def __eq__(self, other):
        return np.array_equal(self.x, other.x) and np.array_equal(
            self.y, other.y
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"PositionGrid2D(batch={self.batch}, shape={self.shape})"


def _as_position_set(positions):
    if isinstance(positions, PositionSet1D):
        return positions
    return PositionSet1D(positions)


def _stream(rng, cfg):
    return rng if rng is not None else cape_rng.RngStream(cfg.seed)


def mean_normalize_positions(values):
    """Subtract the NaN-ignoring mean of every row."""
    values = np.array(values, dtype=np.float64)
    valid = ~np.isnan(values)
    counts = valid.sum(axis=-1, keepdims=True)
    if (counts == 0).any():
        raise utils.InvalidInputError(
            "Cannot mean-normalize a row made only of padding"
        )
    means = np.where(valid, values, 0.0).sum(axis=-1, keepdims=True) / counts
    return values - means


def augment_positions_1d(positions, cfg, rng=None):
    """Apply mean-normalization and, in train mode, CAPE augmentation.

    :param positions: PositionSet1D or (batch, tokens) array
    :param cfg: AugmentationConfig
    :param rng: RngStream, defaults to a fresh stream seeded by cfg.seed
    :return: new PositionSet1D; the input is not modified
    """
    values = _as_position_set(positions).values.copy()
    if cfg.mean_normalize:
        values = mean_normalize_positions(values)
    if not cfg.augment:
        return PositionSet1D(values)

    rng = _stream(rng, cfg)
    batch_size, n_tokens = values.shape
    log_max_scale = math.log(cfg.max_scale)
    delta = rng.uniform(
        -cfg.max_global_shift, cfg.max_global_shift, size=(batch_size, 1)
    )
    delta_local = rng.uniform(
        -cfg.max_local_shift, cfg.max_local_shift, size=(batch_size, n_tokens)
    )
    log_lambdas = rng.uniform(
        -log_max_scale, log_max_scale, size=(batch_size, 1)
    )
    return PositionSet1D((values + delta + delta_local) * np.exp(log_lambdas))


def reference_linspace(n_points):
    """``linspace(-1, 1, n)``; a single point sits at -1."""
    return np.linspace(-1.0, 1.0, n_points)


def augment_grid_2d(n_patches, batch_size, cfg, rng=None):
    """Build a (batch, P, P) patch grid and augment it in train mode.

    Mean-normalization is not applied: the linspace grid is zero-mean.
    """
    if isinstance(n_patches, bool) or not isinstance(
        n_patches, (int, np.integer)
    ):
        raise utils.InvalidInputError(f"Invalid patch count: {n_patches!r}")
    if n_patches < 1:
        raise utils.InvalidInputError(
            f"Patches per side must be >= 1: {n_patches}"
        )
    if batch_size < 1:
        raise utils.InvalidInputError(f"Batch must be >= 1: {batch_size}")

    line = reference_linspace(n_patches)
    shape = (batch_size, n_patches, n_patches)
    x = np.zeros(shape) + line[None, None, :]
    y = np.zeros(shape) + line[None, :, None]
    grid = PositionGrid2D(x, y)
    if not cfg.augment:
        return grid
    return augment_grid_positions(grid, cfg, rng)


def augment_grid_positions(grid, cfg, rng=None):
    """Shift and scale an existing (batch, rows, cols) grid in train mode.

    Draw order matches augment_grid_2d, so a linspace grid augmented here
    gives the same coordinates for the same stream.
    """
    if not cfg.augment:
        return PositionGrid2D(grid.x, grid.y)
    rng = _stream(rng, cfg)
    x, y = grid.x.copy(), grid.y.copy()
    shape = x.shape
    batch_size = shape[0]
    glob, loc = cfg.max_global_shift, cfg.max_local_shift
    log_max_scale = math.log(cfg.max_scale)
    x += rng.uniform(-glob, glob, size=(batch_size, 1, 1))
    y += rng.uniform(-glob, glob, size=(batch_size, 1, 1))
    x += rng.uniform(-loc, loc, size=shape)
    y += rng.uniform(-loc, loc, size=shape)
    lambdas = np.exp(
        rng.uniform(-log_max_scale, log_max_scale, size=(batch_size, 1, 1))
    )
    x *= lambdas
    y *= lambdas
    return PositionGrid2D(x, y)


def augment_mt_pair(src_positions, tgt_positions, alpha, cfg, rng=None):
    """Synchronised augmentation of a source/target sentence batch.

    Source positions are scaled by ``alpha`` first. Each pair shares one
    global shift and one scale; local shifts come from U(-0.5, 0.5)
    independently for source and target tokens.
    """
    if not _is_real(alpha) or alpha <= 0:
        raise utils.InvalidInputError(f"alpha must be positive: {alpha!r}")
    if cfg.mean_normalize:
        raise utils.InvalidInputError(
            "Mean-normalization must be off for translation pairs"
        )
    src = _as_position_set(src_positions).values * alpha
    tgt = _as_position_set(tgt_positions).values.copy()
    if src.shape[0] != tgt.shape[0]:
        raise utils.ShapeMismatchError(
            f"Source batch {src.shape[0]} != target batch {tgt.shape[0]}"
        )
    if not cfg.augment:
        return PositionSet1D(src), PositionSet1D(tgt)

    rng = _stream(rng, cfg)
    batch_size = src.shape[0]
    local = constants.MT_LOCAL_SHIFT
    log_max_scale = math.log(cfg.max_scale)
    delta = rng.uniform(
        -cfg.max_global_shift, cfg.max_global_shift, size=(batch_size, 1)
    )
    eps_src = rng.uniform(-local, local, size=src.shape)
    eps_tgt = rng.uniform(-local, local, size=tgt.shape)
    lambdas = np.exp(
        rng.uniform(-log_max_scale, log_max_scale, size=(batch_size, 1))
    )
    return (
        PositionSet1D((src + delta + eps_src) * lambdas),
        PositionSet1D((tgt + delta + eps_tgt) * lambdas),
    )


def mt_source_scale(target_tokens, source_tokens):
    """Ratio of target to source corpus token counts."""
    if target_tokens <= 0 or source_tokens <= 0:
        raise utils.InvalidInputError("Token counts must be positive")
    return target_tokens / source_tokens


def eval_gamma(
    resolution,
    train_resolution=constants.TRAIN_RESOLUTION,
    strategy="linear",
):
    """Evaluation rescaling factor for a resolution.

    ``baseline`` keeps 1, ``linear`` uses r / r_train and ``sqrt`` uses
    sqrt(r / r_train).
    """
    if resolution <= 0 or train_resolution <= 0:
        raise utils.InvalidInputError("Resolutions must be positive")
    if strategy == "baseline":
        return 1.0
    if strategy == "linear":
        return resolution / train_resolution
    if strategy == "sqrt":
        return math.sqrt(resolution / train_resolution)
    raise utils.InvalidInputError(
        f"Unknown gamma strategy '{strategy}', expected one of "
        f"{', '.join(constants.GAMMA_STRATEGIES)}"
    )


def rescale_eval_positions(grid, gamma):
    """Map coordinates from [-1, 1] to [-gamma, gamma]."""
    if not _is_real(gamma) or gamma <= 0:
        raise utils.InvalidInputError(f"gamma must be positive: {gamma!r}")
    return PositionGrid2D(grid.x * gamma, grid.y * gamma)
