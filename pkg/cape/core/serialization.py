#
# SPDX-License-Identifier: Apache-2.0
r"""
============
File formats
============

Plain-text files written by the command line tools.

Embedding files (``cape-emb v1``) start with ``#`` header lines, then hold
one CSV row per token with ``dim_K`` columns:

.. code-block:: none

    # format: cape-emb v1
    # modality: text
    # dim_K: 4
    # n_tokens: 2
    # layout: concatenated
    1,1,0,0
    0.540302305868,0.999950000417,0.841470984808,0.00999983333417

Position files (``cape-pos v1``) use the same header convention. Rows are
``batch,index,value`` for 1D sets and ``batch,index,x,y`` for grids, where
``index`` is the row-major token index. Positions keep 17 significant
digits so a reloaded file reproduces the doubles exactly.

NaN is spelled ``nan``. Formatting is canonical: loading a file and
saving it again gives the same bytes.

Component images are ASCII PGM (``P2``) with maxval 255.
"""
import csv
import io
import logging
import math
import os

import numpy as np

from cape.core import augmentation
from cape.core import constants
from cape.core import embeddings
from cape.core import utils

LOG = logging.getLogger(__name__)

KIND_1D = "1d"
KIND_2D = "2d"


def format_number(value, digits):
    value = float(value)
    if math.isnan(value):
        return "nan"
    return format(value, f".{digits}g")


def _parse_number(text, source):
    try:
        return float(text)
    except ValueError:
        raise utils.InvalidInputError(f"{source}: invalid number '{text}'")


def _write_header(out, fields):
    for key, value in fields:
        out.write(f"# {key}: {value}\n")


def _split_header(text, source):
    header = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise utils.InvalidInputError(
                    f"{source}: malformed header line '{line}'"
                )
            header[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    return header, body


def _header_int(header, key, source):
    try:
        return int(header[key])
    except KeyError:
        raise utils.InvalidInputError(f"{source}: missing header '{key}'")
    except ValueError:
        raise utils.InvalidInputError(
            f"{source}: header '{key}' is not an integer"
        )


def _check_format(header, expected, source):
    found = header.get("format")
    if found != expected:
        raise utils.InvalidInputError(
            f"{source}: expected format '{expected}', found '{found}'"
        )


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def dumps_embedding(emb):
    """Render an Embedding in the ``cape-emb v1`` format."""
    rows = emb.rows()
    out = io.StringIO()
    _write_header(
        out,
        [
            ("format", constants.EMBEDDING_FORMAT),
            ("modality", emb.modality or "unknown"),
            ("dim_K", emb.dim),
            ("n_tokens", rows.shape[0]),
            ("layout", emb.layout),
        ],
    )
    writer = _writer(out)
    for row in rows:
        writer.writerow(
            format_number(v, constants.EMBEDDING_DIGITS) for v in row
        )
    return out.getvalue()


def loads_embedding(text, source="<string>"):
    """Parse ``cape-emb v1`` text back into an Embedding."""
    header, body = _split_header(text, source)
    _check_format(header, constants.EMBEDDING_FORMAT, source)
    dim = _header_int(header, "dim_K", source)
    n_tokens = _header_int(header, "n_tokens", source)
    layout = header.get("layout", constants.CONCATENATED)
    modality = header.get("modality")
    if modality == "unknown":
        modality = None

    rows = list(csv.reader(body))
    if len(rows) != n_tokens:
        raise utils.ShapeMismatchError(
            f"{source}: header says {n_tokens} tokens, found {len(rows)}"
        )
    if any(len(row) != dim for row in rows):
        raise utils.ShapeMismatchError(
            f"{source}: every row must have {dim} columns"
        )
    matrix = np.array(
        [[_parse_number(v, source) for v in row] for row in rows],
        dtype=np.float64,
    ).reshape(n_tokens, dim)
    return embeddings.Embedding(matrix, layout, modality)


def dumps_positions(positions):
    """Render a PositionSet1D or PositionGrid2D as ``cape-pos v1``."""
    digits = constants.POSITION_DIGITS
    out = io.StringIO()
    if isinstance(positions, augmentation.PositionGrid2D):
        n_rows, n_cols = positions.shape
        _write_header(
            out,
            [
                ("format", constants.POSITION_FORMAT),
                ("kind", KIND_2D),
                ("batch", positions.batch),
                ("rows", n_rows),
                ("cols", n_cols),
            ],
        )
        writer = _writer(out)
        xs = positions.x.reshape(positions.batch, -1)
        ys = positions.y.reshape(positions.batch, -1)
        for b in range(positions.batch):
            for i in range(xs.shape[1]):
                writer.writerow(
                    [
                        b,
                        i,
                        format_number(xs[b, i], digits),
                        format_number(ys[b, i], digits),
                    ]
                )
    else:
        values = getattr(positions, "values", positions)
        positions = augmentation.PositionSet1D(values)
        _write_header(
            out,
            [
                ("format", constants.POSITION_FORMAT),
                ("kind", KIND_1D),
                ("batch", positions.batch),
                ("n_tokens", positions.n_tokens),
            ],
        )
        writer = _writer(out)
        for b in range(positions.batch):
            for i in range(positions.n_tokens):
                writer.writerow(
                    [b, i, format_number(positions.values[b, i], digits)]
                )
    return out.getvalue()


def _position_table(body, n_values, expected_rows, source):
    rows = list(csv.reader(body))
    if len(rows) != expected_rows:
        raise utils.ShapeMismatchError(
            f"{source}: expected {expected_rows} rows, found {len(rows)}"
        )
    table = np.empty((expected_rows, n_values))
    for r, row in enumerate(rows):
        if len(row) != 2 + n_values:
            raise utils.ShapeMismatchError(
                f"{source}: row {r + 1} must have {2 + n_values} columns"
            )
        table[r] = [_parse_number(v, source) for v in row[2:]]
    return table


def loads_positions(text, source="<string>"):
    """Parse ``cape-pos v1`` text into a PositionSet1D or PositionGrid2D."""
    header, body = _split_header(text, source)
    _check_format(header, constants.POSITION_FORMAT, source)
    kind = header.get("kind", KIND_1D)
    batch = _header_int(header, "batch", source)
    if kind == KIND_2D:
        n_rows = _header_int(header, "rows", source)
        n_cols = _header_int(header, "cols", source)
        table = _position_table(body, 2, batch * n_rows * n_cols, source)
        shape = (batch, n_rows, n_cols)
        return augmentation.PositionGrid2D(
            table[:, 0].reshape(shape), table[:, 1].reshape(shape)
        )
    if kind != KIND_1D:
        raise utils.InvalidInputError(f"{source}: unknown kind '{kind}'")
    n_tokens = _header_int(header, "n_tokens", source)
    table = _position_table(body, 1, batch * n_tokens, source)
    return augmentation.PositionSet1D(table.reshape(batch, n_tokens))


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as err:
        raise utils.InvalidInputError(f"Could not read {path}: {err}")


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    LOG.info("Output written to file: %s", path)


def save_embedding(path, emb):
    _write_text(path, dumps_embedding(emb))


def load_embedding(path):
    return loads_embedding(_read_text(path), source=path)


def save_positions(path, positions):
    _write_text(path, dumps_positions(positions))


def load_positions(path):
    return loads_positions(_read_text(path), source=path)


def pgm_levels(values):
    """Map components in [-1, 1] to gray levels ``round(255 (v + 1) / 2)``.

    Ties round to even, as numpy does.
    """
    values = np.asarray(values, dtype=np.float64)
    if np.isnan(values).any():
        raise utils.InvalidInputError("Cannot render NaN components")
    levels = np.rint(constants.PGM_MAXVAL * (values + 1.0) / 2.0)
    return np.clip(levels, 0, constants.PGM_MAXVAL).astype(int)


def dumps_pgm(values):
    levels = pgm_levels(values)
    if levels.ndim != 2:
        raise utils.ShapeMismatchError(
            f"A PGM image needs a 2D array: {levels.shape}"
        )
    height, width = levels.shape
    lines = ["P2", f"{width} {height}", str(constants.PGM_MAXVAL)]
    lines.extend(" ".join(str(v) for v in row) for row in levels)
    return "\n".join(lines) + "\n"


def loads_pgm(text):
    """Gray levels of an ASCII PGM image as an int array."""
    tokens = [
        token
        for line in text.splitlines()
        if not line.startswith("#")
        for token in line.split()
    ]
    if len(tokens) < 4 or tokens[0] != "P2":
        raise utils.InvalidInputError("Not an ASCII PGM image")
    width, height = int(tokens[1]), int(tokens[2])
    pixels = np.array([int(t) for t in tokens[4:]])
    if pixels.size != width * height:
        raise utils.ShapeMismatchError(
            f"PGM holds {pixels.size} pixels, expected {width * height}"
        )
    return pixels.reshape(height, width)


def save_pgm(path, values):
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        raise utils.InvalidInputError(f"No such directory: {directory}")
    with open(path, "w", encoding="ascii", newline="") as f:
        f.write(dumps_pgm(values))
    LOG.debug("PGM image written to file: %s", path)
