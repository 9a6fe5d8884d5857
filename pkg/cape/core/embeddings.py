#
# SPDX-License-Identifier: Apache-2.0
r"""
=====================
Sinusoidal embeddings
=====================

Deterministic maps from positions to sinusoidal embeddings for text
(token ordinals), audio (seconds) and images (patch coordinates in
[-1, 1]).

Columns use the concatenated layout: the first K/2 columns are cosines
and the last K/2 are sines of the same phases. A NaN position marks a
padding token and yields an all-NaN row.

1D frequencies are ``scale * base ** (-2k / K)`` for ``k = 0 .. K/2 - 1``
(scale 1 for text, 30 for audio). 2D frequencies use magnitudes
``rho_j = 10 ** (j / (K/2))`` for ``j = 1 .. K/2`` and direction angles
``j - 1`` radians; the approximate variant uses
``rho = 10 ** linspace(0, 1, K/2)`` instead.

All trigonometry is done in double precision.
"""
import logging

import numpy as np

from cape.core import constants
from cape.core import utils

LOG = logging.getLogger(__name__)


class FrequencySpec:
    def __init__(
        self,
        modality,
        dim,
        base=constants.TEXT_BASE,
        scale=None,
        approximate=False,
    ):
        """Frequency family for one modality.

        :param modality: one of text, audio, image
        :param dim: embedding width K, even and >= 2
        :param base: exponent base of the 1D schedule
        :param scale: 1D frequency multiplier, defaults to 1 (text) or 30
            (audio)
        :param approximate: use the simpler linspace magnitudes for images
        :raises InvalidSpecError: on an unknown modality or bad width
        """
        if modality not in constants.MODALITIES:
            raise utils.InvalidSpecError(f"Unknown modality: {modality}")
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
            raise utils.InvalidSpecError(f"dim_K must be an integer: {dim}")
        if dim < 2 or dim % 2:
            raise utils.InvalidSpecError(
                f"dim_K must be even and >= 2, got {dim}"
            )
        if base <= 1:
            raise utils.InvalidSpecError(f"base must exceed 1, got {base}")

        self.modality = modality
        self.dim = int(dim)
        self.base = float(base)
        self.approximate = bool(approximate)
        if scale is None:
            scale = (
                constants.AUDIO_SCALE
                if modality == constants.AUDIO
                else 1.0
            )
        if scale <= 0:
            raise utils.InvalidSpecError(f"scale must be positive: {scale}")
        self.scale = float(scale)

        half = self.dim // 2
        if modality == constants.IMAGE:
            if self.approximate:
                rho = constants.IMAGE_MAX_FREQUENCY ** np.linspace(0, 1, half)
            else:
                rho = constants.IMAGE_MAX_FREQUENCY ** (
                    np.arange(1, half + 1) / half
                )
            angles = np.arange(half, dtype=np.float64)
            self.rho = rho
            self.w_x = rho * np.cos(angles)
            self.w_y = rho * np.sin(angles)
            self.omega = None
        else:
            exponents = -2.0 * np.arange(half) / self.dim
            self.omega = self.scale * self.base**exponents
            self.rho = self.w_x = self.w_y = None

    @classmethod
    def text(cls, dim, base=constants.TEXT_BASE):
        return cls(constants.TEXT, dim, base=base)

    @classmethod
    def audio(cls, dim, base=constants.TEXT_BASE, scale=None):
        return cls(constants.AUDIO, dim, base=base, scale=scale)

    @classmethod
    def image(cls, dim, approximate=False):
        return cls(constants.IMAGE, dim, approximate=approximate)

    @property
    def half(self):
        return self.dim // 2

    @property
    def is_planar(self):
        return self.modality == constants.IMAGE

    def __repr__(self):
        return (
            f"FrequencySpec(modality={self.modality!r}, dim={self.dim}, "
            f"approximate={self.approximate})"
        )


class Embedding:
    """Per-token embedding matrix.

    ``matrix`` has shape ``(..., n_tokens, dim)``; leading axes are batch
    axes.
    """

    def __init__(self, matrix, layout=constants.CONCATENATED, modality=None):
        if layout not in constants.LAYOUTS:
            raise utils.InvalidSpecError(f"Unknown layout: {layout}")
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim < 2:
            raise utils.ShapeMismatchError(
                f"Embedding matrix needs at least 2 axes: {matrix.shape}"
            )
        if matrix.shape[-1] % 2:
            raise utils.InvalidSpecError(
                f"Embedding width must be even: {matrix.shape[-1]}"
            )
        self.matrix = matrix
        self.layout = layout
        self.modality = modality

    @property
    def dim(self):
        return self.matrix.shape[-1]

    @property
    def n_tokens(self):
        return self.matrix.shape[-2]

    def rows(self):
        """All token rows flattened to a (tokens, dim) matrix."""
        return self.matrix.reshape(-1, self.dim)

    def padding_rows(self):
        return np.all(np.isnan(self.rows()), axis=-1)

    def astype(self, dtype):
        """Export copy in another float precision, e.g. float32."""
        return self.matrix.astype(dtype)

    def __eq__(self, other):
        return (
            self.layout == other.layout
            and self.matrix.shape == other.matrix.shape
            and np.array_equal(self.matrix, other.matrix, equal_nan=True)
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return id(self)


def to_interleaved(emb):
    """Reorder [cos | sin] columns into (cos, sin) pairs."""
    if emb.layout == constants.INTERLEAVED:
        return emb
    half = emb.dim // 2
    out = np.empty_like(emb.matrix)
    out[..., 0::2] = emb.matrix[..., :half]
    out[..., 1::2] = emb.matrix[..., half:]
    return Embedding(out, constants.INTERLEAVED, emb.modality)


def to_concatenated(emb):
    """Reorder (cos, sin) pairs into [cos | sin] columns."""
    if emb.layout == constants.CONCATENATED:
        return emb
    out = np.concatenate(
        [emb.matrix[..., 0::2], emb.matrix[..., 1::2]], axis=-1
    )
    return Embedding(out, constants.CONCATENATED, emb.modality)


def _check_positions(values):
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise utils.InvalidInputError("Position set is empty")
    if np.isinf(values).any():
        raise utils.InvalidInputError("Positions must be finite or NaN")
    return values


def _check_1d_spec(spec):
    if spec.is_planar:
        raise utils.InvalidSpecError(
            f"Expected a text or audio spec, got {spec.modality}"
        )


def _positions_1d(positions):
    # PositionSet1D and plain arrays are both accepted
    return getattr(positions, "values", positions)


def embed_1d(positions, spec, layout=constants.CONCATENATED):
    """Embed 1D positions (token ordinals or seconds).

    :param positions: PositionSet1D or array of shape ``(..., n_tokens)``;
        a 0-d or 1-d input is treated as one sequence
    :param spec: text or audio FrequencySpec
    :return: Embedding with matrix shape ``positions.shape + (K,)``
    """
    _check_1d_spec(spec)
    values = _check_positions(_positions_1d(positions))
    if values.ndim == 0:
        values = values.reshape(1)

    phase = values[..., None] * spec.omega
    matrix = np.concatenate([np.cos(phase), np.sin(phase)], axis=-1)
    emb = Embedding(matrix, constants.CONCATENATED, spec.modality)
    if layout == constants.INTERLEAVED:
        return to_interleaved(emb)
    return emb


def shift_apply(emb, m, spec):
    """Rotate every (cos, sin) pair by ``omega_k * m``.

    Equivalent to embedding positions shifted by ``m``; ``m`` may be a
    scalar or an array broadcastable to the token axes.
    """
    _check_1d_spec(spec)
    if emb.dim != spec.dim:
        raise utils.ShapeMismatchError(
            f"Embedding width {emb.dim} does not match spec width {spec.dim}"
        )
    layout = emb.layout
    emb = to_concatenated(emb)
    half = spec.half

    angle = np.asarray(m, dtype=np.float64)[..., None] * spec.omega
    cos_m = np.cos(angle)
    sin_m = np.sin(angle)
    c = emb.matrix[..., :half]
    s = emb.matrix[..., half:]
    rotated = np.concatenate(
        [c * cos_m - s * sin_m, s * cos_m + c * sin_m], axis=-1
    )
    out = Embedding(rotated, constants.CONCATENATED, emb.modality)
    if layout == constants.INTERLEAVED:
        return to_interleaved(out)
    return out


def _grid_arrays(grid):
    x = np.asarray(getattr(grid, "x", None), dtype=np.float64)
    y = np.asarray(getattr(grid, "y", None), dtype=np.float64)
    if x.shape != y.shape:
        raise utils.ShapeMismatchError(
            f"Grid x shape {x.shape} does not match y shape {y.shape}"
        )
    if x.ndim < 2:
        raise utils.ShapeMismatchError(
            f"Grid coordinates need at least 2 axes: {x.shape}"
        )
    _check_positions(x)
    _check_positions(y)
    return x, y


def planar_phase(x, y, spec):
    return np.pi * (x[..., None] * spec.w_x + y[..., None] * spec.w_y)


def embed_2d(grid, spec, layout=constants.CONCATENATED):
    """Embed image patch coordinates.

    :param grid: PositionGrid2D (or any object with ``x`` and ``y``) of
        shape ``(..., rows, cols)``
    :param spec: image FrequencySpec
    :return: Embedding of shape ``(..., rows * cols, K)``, tokens in
        row-major grid order
    """
    if not spec.is_planar:
        raise utils.InvalidSpecError(
            f"Expected an image spec, got {spec.modality}"
        )
    x, y = _grid_arrays(grid)
    phase = planar_phase(x, y, spec)
    matrix = np.concatenate([np.cos(phase), np.sin(phase)], axis=-1)
    matrix = matrix.reshape(x.shape[:-2] + (-1, spec.dim))
    emb = Embedding(matrix, constants.CONCATENATED, constants.IMAGE)
    if layout == constants.INTERLEAVED:
        return to_interleaved(emb)
    return emb


def embed_1d_jacobian(position, spec):
    """Derivative of one embedding row with respect to its position."""
    _check_1d_spec(spec)
    if np.isnan(position):
        raise utils.InvalidInputError("Jacobian undefined at a padding token")
    phase = position * spec.omega
    return np.concatenate(
        [-spec.omega * np.sin(phase), spec.omega * np.cos(phase)]
    )


def embed_2d_jacobian(x, y, spec):
    """Derivative of one planar embedding row, shape (K, 2) for (x, y)."""
    if not spec.is_planar:
        raise utils.InvalidSpecError(
            f"Expected an image spec, got {spec.modality}"
        )
    if np.isnan(x) or np.isnan(y):
        raise utils.InvalidInputError("Jacobian undefined at a padding token")
    phase = np.pi * (spec.w_x * x + spec.w_y * y)
    sin, cos = np.sin(phase), np.cos(phase)
    columns = []
    for w in (spec.w_x, spec.w_y):
        columns.append(np.concatenate([-np.pi * w * sin, np.pi * w * cos]))
    return np.stack(columns, axis=-1)


class AbsposTable:
    """Absolute embedding lookup table that wraps around its period."""

    def __init__(self, table, period=None):
        table = np.asarray(table, dtype=np.float64)
        if table.ndim != 2 or table.shape[0] == 0:
            raise utils.ShapeMismatchError(
                f"Abspos table must be a non-empty matrix: {table.shape}"
            )
        if period is None:
            period = table.shape[0]
        if period < 1 or period > table.shape[0]:
            raise utils.InvalidInputError(
                f"Period {period} outside 1..{table.shape[0]}"
            )
        self.table = table
        self.period = int(period)

    @classmethod
    def random(cls, n_rows, dim, rng):
        return cls(rng.uniform(-1.0, 1.0, size=(n_rows, dim)))

    @property
    def dim(self):
        return self.table.shape[1]


def abspos_lookup(table, index):
    """Row ``index mod N``; ``index`` may be an int or an int array."""
    index = np.asarray(index)
    if not np.issubdtype(index.dtype, np.integer):
        raise utils.InvalidInputError(f"Index must be integer: {index}")
    if (index < 0).any():
        raise utils.InvalidInputError(f"Index must be non-negative: {index}")
    return table.table[index % table.period]
