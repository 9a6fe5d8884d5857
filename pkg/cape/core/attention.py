#
# SPDX-License-Identifier: Apache-2.0
r"""
=====================
Single-head attention
=====================

Minimal encoder layer used to observe how positional embeddings reach
attention: one head, one layer, no layer norm.

Row-vector convention, for tokens ``X`` (n x d) and input ``H``::

    H = X + P                 (addpos; nopos and relpos use H = X)
    Q, K, V = H Wq, H Wk, H Wv
    S_ij = (Q_i . K_j + Q_i . R[clip(j - i)]) / sqrt(d)   (R: relpos only)
    A = softmax(S) row-wise, padded keys masked
    out = H + (A V) Wo

Modes without relative offsets are permutation-equivariant, and the
implementation makes that exact in floating point: rows are processed in
a canonical order defined by their bytes, so a permuted input reaches the
matrix products as the very same array.
"""
import logging
import math

import numpy as np

from cape.core import constants
from cape.core import utils

LOG = logging.getLogger(__name__)


def _uniform_matrix(rng, rows, cols, bound):
    return rng.uniform(-bound, bound, size=(rows, cols))


class RelposTable:
    """Relative key offsets for distances clipped to ``max_context``."""

    def __init__(self, max_context, offsets):
        if max_context < 1:
            raise utils.InvalidInputError(
                f"max_context must be >= 1: {max_context}"
            )
        offsets = np.asarray(offsets, dtype=np.float64)
        if offsets.ndim != 2 or offsets.shape[0] != 2 * max_context + 1:
            raise utils.ShapeMismatchError(
                f"Offsets table must have {2 * max_context + 1} rows: "
                f"{offsets.shape}"
            )
        self.max_context = int(max_context)
        self.offsets = offsets

    @classmethod
    def random(cls, max_context, d_model, rng):
        bound = 1.0 / math.sqrt(d_model)
        return cls(
            max_context,
            _uniform_matrix(rng, 2 * max_context + 1, d_model, bound),
        )

    @property
    def dim(self):
        return self.offsets.shape[1]

    def offset_index(self, distance):
        """Row of the offsets table used for a key at ``distance``."""
        c = self.max_context
        return np.clip(distance, -c, c) + c

    def distance_index(self, n_tokens):
        positions = np.arange(n_tokens)
        return self.offset_index(positions[None, :] - positions[:, None])

    def key_offsets(self, n_tokens):
        """Full (n, n, d) table of key adjustments; small n only."""
        return self.offsets[self.distance_index(n_tokens)]

    def relative_logits(self, q):
        """``Q_i . R[clip(j - i)]`` for all pairs, without the n*n*d table."""
        per_offset = q @ self.offsets.T
        return np.take_along_axis(
            per_offset, self.distance_index(q.shape[0]), axis=1
        )


class AttentionParams:
    def __init__(self, w_q, w_k, w_v, w_o, mode=constants.NOPOS, relpos=None):
        """Projection matrices and positional mode of the layer.

        :param w_q: query projection (d_model x d_model), likewise w_k,
            w_v and w_o
        :param mode: nopos, addpos or relpos
        :param relpos: RelposTable, required for relpos
        """
        if mode not in constants.ATTENTION_MODES:
            raise utils.InvalidInputError(f"Unknown attention mode: {mode}")
        matrices = [
            np.asarray(w, dtype=np.float64) for w in (w_q, w_k, w_v, w_o)
        ]
        d_model = matrices[0].shape[0] if matrices[0].ndim == 2 else 0
        if d_model < 2 or d_model % 2:
            raise utils.InvalidSpecError(
                f"d_model must be a positive even integer: {d_model}"
            )
        for w in matrices:
            if w.shape != (d_model, d_model):
                raise utils.ShapeMismatchError(
                    f"Projection shape {w.shape} != ({d_model}, {d_model})"
                )
            if not np.isfinite(w).all():
                raise utils.InvalidInputError("Projections must be finite")
        if mode == constants.RELPOS:
            if relpos is None:
                raise utils.InvalidInputError("relpos mode needs a table")
            if relpos.dim != d_model:
                raise utils.ShapeMismatchError(
                    f"Relpos width {relpos.dim} != d_model {d_model}"
                )
        self.w_q, self.w_k, self.w_v, self.w_o = matrices
        self.d_model = d_model
        self.mode = mode
        self.relpos = relpos

    @classmethod
    def random(cls, d_model, rng, mode=constants.NOPOS, relpos_context=None):
        """Uniform init in [-1/sqrt(d), 1/sqrt(d)].

        Draw order: Wq, Wk, Wv, Wo, then the relpos table if requested.
        """
        bound = 1.0 / math.sqrt(d_model)
        weights = [
            _uniform_matrix(rng, d_model, d_model, bound) for _ in range(4)
        ]
        relpos = None
        if relpos_context is not None:
            relpos = RelposTable.random(relpos_context, d_model, rng)
        return cls(*weights, mode=mode, relpos=relpos)

    def with_mode(self, mode):
        return AttentionParams(
            self.w_q, self.w_k, self.w_v, self.w_o, mode, self.relpos
        )


def softmax(logits, key_mask=None):
    """Row-wise softmax; masked keys get zero weight."""
    logits = np.array(logits, dtype=np.float64)
    if key_mask is not None:
        logits[..., key_mask] = -np.inf
    shifted = logits - logits.max(axis=-1, keepdims=True)
    weights = np.exp(shifted)
    return weights / weights.sum(axis=-1, keepdims=True)


def canonical_order(rows):
    """Order of rows sorted by their raw bytes."""
    rows = np.ascontiguousarray(rows)
    keys = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1])))
    return np.argsort(keys.ravel(), kind="stable")


def _prepare(tokens, pos_emb, params, padding_mask):
    x = np.array(tokens, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != params.d_model:
        raise utils.ShapeMismatchError(
            f"Tokens must be (n, {params.d_model}): {x.shape}"
        )
    n = x.shape[0]
    if n == 0:
        raise utils.InvalidInputError("No tokens to encode")
    if padding_mask is None:
        padding = np.zeros(n, dtype=bool)
    else:
        padding = np.asarray(padding_mask, dtype=bool)
        if padding.shape != (n,):
            raise utils.ShapeMismatchError(
                f"Padding mask shape {padding.shape} != ({n},)"
            )
    if padding.all():
        raise utils.InvalidInputError("Every token is padding")

    if params.mode == constants.ADDPOS:
        if pos_emb is None:
            raise utils.InvalidInputError("addpos mode needs pos_emb")
        p = np.asarray(getattr(pos_emb, "matrix", pos_emb), dtype=np.float64)
        p = p.reshape(-1, p.shape[-1])
        if p.shape != x.shape:
            raise utils.ShapeMismatchError(
                f"Positional embedding shape {p.shape} != tokens {x.shape}"
            )
        nan_rows = np.isnan(p).any(axis=1)
        if (nan_rows & ~padding).any():
            raise utils.InvalidInputError(
                "NaN positional rows without a matching padding mask"
            )
        x = x + np.where(nan_rows[:, None], 0.0, p)
    elif pos_emb is not None:
        raise utils.InvalidInputError(
            f"{params.mode} mode takes no absolute positional embedding"
        )

    x[padding] = 0.0
    if not np.isfinite(x).all():
        raise utils.InvalidInputError("Tokens must be finite")
    return x, padding


def _forward(h, params, padding):
    scale = 1.0 / math.sqrt(params.d_model)
    q = h @ params.w_q
    k = h @ params.w_k
    v = h @ params.w_v
    logits = q @ k.T
    if params.mode == constants.RELPOS:
        logits = logits + params.relpos.relative_logits(q)
    weights = softmax(logits * scale, padding)
    out = h + (weights @ v) @ params.w_o
    return out, (q, k, v, weights)


def encode(tokens, pos_emb, params, padding_mask=None):
    """Run the attention layer.

    :param tokens: (n, d_model) token features
    :param pos_emb: Embedding or (n, d_model) array, addpos mode only
    :param params: AttentionParams
    :param padding_mask: optional boolean (n,), True marks padding;
        padded rows of the output are NaN
    :return: (n, d_model) array
    """
    h, padding = _prepare(tokens, pos_emb, params, padding_mask)
    if params.mode == constants.RELPOS:
        out, _ = _forward(h, params, padding)
    else:
        order = canonical_order(h)
        ordered, _ = _forward(h[order], params, padding[order])
        out = np.empty_like(ordered)
        out[order] = ordered
    out[padding] = np.nan
    return out


def encode_jacobian(tokens, pos_emb, params):
    """Exact Jacobian of ``encode`` with respect to the tokens.

    Forward-mode differentiation, one tangent per input coordinate.
    Returns an (n * d, n * d) matrix indexed by flattened row-major
    (token, feature) pairs: ``J[out, in]``.
    """
    h, padding = _prepare(tokens, pos_emb, params, None)
    _, (q, k, v, weights) = _forward(h, params, padding)
    n, d = h.shape
    scale = 1.0 / math.sqrt(d)
    jac = np.empty((n * d, n * d))
    for column in range(n * d):
        dh = np.zeros((n, d))
        dh.flat[column] = 1.0
        dq = dh @ params.w_q
        dk = dh @ params.w_k
        dv = dh @ params.w_v
        dlogits = dq @ k.T + q @ dk.T
        if params.mode == constants.RELPOS:
            dlogits = dlogits + params.relpos.relative_logits(dq)
        dlogits *= scale
        dweights = weights * (
            dlogits - (weights * dlogits).sum(axis=1, keepdims=True)
        )
        dz = dweights @ v + weights @ dv
        jac[:, column] = (dh + dz @ params.w_o).ravel()
    return jac


def attention_logits(emb):
    """Logits from raw embedding dot products, scaled by 1/sqrt(K)."""
    rows = np.asarray(getattr(emb, "matrix", emb), dtype=np.float64)
    rows = rows.reshape(-1, rows.shape[-1])
    return rows @ rows.T / math.sqrt(rows.shape[-1])
