#
# SPDX-License-Identifier: Apache-2.0
"""Write the unaugmented CAPE embedding of a text, image or audio shape."""
import argparse
import logging
import sys

from cape.cli import options
from cape.core import constants
from cape.core import utils

LOG = logging.getLogger(__name__)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cape-embed",
        description="Write the deterministic sinusoidal embedding of a "
        "text, image or audio position set",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    options.add_position_arguments(parser)
    parser.add_argument(
        "--out",
        dest="out",
        action="store",
        default=None,
        help="embedding file to write (default: standard output)",
    )
    options.add_common_arguments(parser)
    parser.epilog = (
        "examples:\n"
        "  cape-embed --modality text --length 4 --dim 8\n"
        "  cape-embed --modality image --grid 14 --dim 768 --out vit.csv\n"
        "  cape-embed --modality audio --frames 2 --hop 0.01 --dim 4\n"
    )
    return parser


def main():
    """cape-embed CLI."""
    options.init_logger(options.early_log_level())
    parser = _build_parser()
    args = parser.parse_args()
    options.apply_log_level(args)

    try:
        options.check_position_flags(args)
    except utils.InvalidInputError as e:
        parser.print_usage(sys.stderr)
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    from cape.core import serialization

    try:
        spec = options.frequency_spec(args)
        pos = options.positions_from_args(args)
        emb = options.embed(pos, spec, args.layout)
        LOG.debug("embedded %d tokens with %r", emb.n_tokens, spec)
        if args.out:
            serialization.save_embedding(args.out, emb)
        else:
            sys.stdout.write(serialization.dumps_embedding(emb))
    except (utils.CapeError, OSError) as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    sys.exit(constants.EXIT_OK)


if __name__ == "__main__":
    main()
