#
# SPDX-License-Identifier: Apache-2.0
r"""
=================
Attention timings
=================

Times forward passes of the single-head layer with absolute sinusoidal
embeddings (``addpos``) against relative key offsets (``relpos``).

Each (mode, length) cell runs ``warmup`` discarded passes, then
``repeats`` timed ones; the mean and population standard deviation of the
timed passes are reported. A length that exhausts memory yields a row of
NaN timings instead of aborting the whole table.

The BLAS thread count is fixed by the caller before numpy is imported
(see ``cape-bench``); it is only recorded here.
"""
import logging
import time

import numpy as np

from cape.core import attention
from cape.core import constants
from cape.core import embeddings
from cape.core import positions
from cape.core import rng as cape_rng
from cape.core import utils

LOG = logging.getLogger(__name__)

BENCH_MODES = (constants.ADDPOS, constants.RELPOS)
FORWARD = "forward"


class BenchRow:
    def __init__(
        self,
        mode,
        length,
        seconds_mean,
        seconds_std,
        repeats,
        warmup,
        threads,
        pass_name=FORWARD,
    ):
        self.mode = mode
        self.length = int(length)
        self.pass_name = pass_name
        self.seconds_mean = float(seconds_mean)
        self.seconds_std = float(seconds_std)
        self.repeats = int(repeats)
        self.warmup = int(warmup)
        self.threads = int(threads)

    @property
    def failed(self):
        return bool(np.isnan(self.seconds_mean))

    def as_dict(self):
        return {
            "mode": self.mode,
            "length": self.length,
            "pass": self.pass_name,
            "seconds_mean": self.seconds_mean,
            "seconds_std": self.seconds_std,
            "repeats": self.repeats,
            "warmup": self.warmup,
            "threads": self.threads,
        }

    def __repr__(self):
        return f"BenchRow({self.as_dict()})"


def _workload(length, d_model, seed):
    stream = cape_rng.RngStream(seed).spawn(length)
    tokens = stream.uniform(-1.0, 1.0, size=(length, d_model))
    spec = embeddings.FrequencySpec.text(d_model)
    pos_emb = embeddings.embed_1d(positions.text_positions(length), spec)
    return tokens, pos_emb.rows()


def time_calls(func, repeats, warmup, timer=time.perf_counter):
    """Run ``func`` warmup + repeats times; return the timed durations."""
    for _ in range(warmup):
        func()
    samples = np.empty(repeats)
    for i in range(repeats):
        start = timer()
        func()
        samples[i] = timer() - start
    return samples


def bench_layer(
    params,
    lengths,
    repeats=constants.BENCH_REPEATS,
    warmup=constants.BENCH_WARMUP,
    threads=1,
    seed=0,
    timer=time.perf_counter,
):
    """Time the layer for every mode and length.

    :param params: AttentionParams carrying a relpos table
    :param lengths: sequence lengths to time
    :param repeats: timed runs per cell, >= 1
    :param warmup: discarded runs per cell, >= 0
    :param threads: BLAS thread count in effect, recorded in every row
    :return: list of BenchRow, modes in the order addpos, relpos for
        each length
    """
    if repeats < 1:
        raise utils.InvalidInputError(f"repeats must be >= 1: {repeats}")
    if warmup < 0:
        raise utils.InvalidInputError(f"warmup must be >= 0: {warmup}")
    if not lengths or any(n < 1 for n in lengths):
        raise utils.InvalidInputError(f"Invalid lengths: {lengths}")
    if params.relpos is None:
        raise utils.InvalidInputError("Benchmark params need a relpos table")

    by_mode = {mode: params.with_mode(mode) for mode in BENCH_MODES}
    rows = []
    for length in lengths:
        try:
            tokens, pos_emb = _workload(length, params.d_model, seed)
        except MemoryError:
            LOG.error("Out of memory building inputs of length %d", length)
            tokens = None
        for mode in BENCH_MODES:
            layer = by_mode[mode]
            emb = pos_emb if mode == constants.ADDPOS else None

            def forward():
                attention.encode(tokens, emb, layer)

            mean = std = float("nan")
            if tokens is not None:
                try:
                    samples = time_calls(forward, repeats, warmup, timer)
                    mean, std = float(samples.mean()), float(samples.std())
                except MemoryError:
                    LOG.error(
                        "Out of memory timing %s at length %d", mode, length
                    )
            LOG.debug("%s length %d: %.6fs", mode, length, mean)
            rows.append(
                BenchRow(mode, length, mean, std, repeats, warmup, threads)
            )
    return rows


def slowdown(rows):
    """relpos / addpos mean time ratio per length."""
    means = {(row.mode, row.length): row.seconds_mean for row in rows}
    ratios = {}
    for mode, length in means:
        if mode != constants.RELPOS:
            continue
        vanilla = means.get((constants.ADDPOS, length))
        if vanilla:
            ratios[length] = means[(mode, length)] / vanilla
    return ratios
