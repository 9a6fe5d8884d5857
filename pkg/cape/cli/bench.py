#
# SPDX-License-Identifier: Apache-2.0
"""Time the toy attention layer with absolute against relative positions.

numpy is only imported after the BLAS thread variables are set, so the
whole table runs with ``--threads`` threads.
"""
import argparse
import csv
import logging
import os
import sys

from cape.cli import options
from cape.core import constants
from cape.core import utils

LOG = logging.getLogger(__name__)

THREAD_VARIABLES = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cape-bench",
        description="Forward-pass timings of the toy attention layer, "
        "addpos against relpos, as CSV on standard output",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--lengths",
        dest="lengths",
        action="store",
        default="10,100,1000",
        help="comma-separated sequence lengths (default: %(default)s)",
    )
    parser.add_argument(
        "--dim",
        dest="dim",
        action="store",
        default=64,
        type=int,
        help="model width (default: %(default)s)",
    )
    parser.add_argument(
        "--relpos-context",
        dest="relpos_context",
        action="store",
        default=100,
        type=int,
        help="relative offsets are clipped to +/- this (default: "
        "%(default)s)",
    )
    parser.add_argument(
        "--repeats",
        dest="repeats",
        action="store",
        default=constants.BENCH_REPEATS,
        type=int,
        help="timed runs per cell (default: %(default)s)",
    )
    parser.add_argument(
        "--warmup",
        dest="warmup",
        action="store",
        default=constants.BENCH_WARMUP,
        type=int,
        help="discarded runs per cell (default: %(default)s)",
    )
    parser.add_argument(
        "--threads",
        dest="threads",
        action="store",
        default=1,
        type=int,
        help="BLAS thread count (default: %(default)s)",
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        action="store",
        default=None,
        help=f"64-bit seed for weights and inputs, else {constants.SEED_ENV}",
    )
    options.add_common_arguments(parser)
    return parser


def set_thread_count(threads):
    for name in THREAD_VARIABLES:
        os.environ[name] = str(threads)
    if "numpy" in sys.modules:
        LOG.warning("numpy already loaded, thread count may not apply")


def write_rows(rows, fileobj):
    writer = csv.DictWriter(
        fileobj, fieldnames=constants.BENCH_FIELDS, lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_dict())


def main():
    """cape-bench CLI."""
    options.init_logger(options.early_log_level())
    parser = _build_parser()
    args = parser.parse_args()
    options.apply_log_level(args)

    try:
        lengths = utils.parse_int_list(args.lengths)
        seed = utils.resolve_seed(args.seed)
        for name in ("dim", "relpos_context", "repeats", "threads"):
            if getattr(args, name) < 1:
                raise utils.InvalidInputError(f"--{name} must be >= 1")
        if args.warmup < 0:
            raise utils.InvalidInputError("--warmup must be >= 0")
    except utils.CapeError as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    set_thread_count(args.threads)
    LOG.info("running with %d BLAS thread(s)", args.threads)

    from cape.core import attention
    from cape.core import bench
    from cape.core import rng as cape_rng

    stream = cape_rng.RngStream(seed)
    try:
        params = attention.AttentionParams.random(
            args.dim,
            stream.spawn(0),
            mode=constants.RELPOS,
            relpos_context=args.relpos_context,
        )
        rows = bench.bench_layer(
            params,
            lengths,
            repeats=args.repeats,
            warmup=args.warmup,
            threads=args.threads,
            seed=seed,
        )
    except utils.CapeError as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    write_rows(rows, sys.stdout)
    for length, ratio in sorted(bench.slowdown(rows).items()):
        LOG.info("length %d: relpos / addpos = %.2f", length, ratio)

    if any(row.failed for row in rows):
        sys.exit(constants.EXIT_FAILURE)
    sys.exit(constants.EXIT_OK)


if __name__ == "__main__":
    main()
