#
# SPDX-License-Identifier: Apache-2.0
"""Argument and logging plumbing shared by the cape console scripts."""
import logging
import sys
import warnings

import cape
from cape.core import constants
from cape.core import utils

LOG = logging.getLogger()


def init_logger(log_level=logging.INFO, log_format=None):
    """Initialize the root logger on stderr.

    :param log_level: logging level for the root logger
    :param log_format: format string, defaults to constants.log_format_string
    """
    LOG.handlers = []

    if not log_format:
        # default log format
        log_format_string = constants.log_format_string
    else:
        log_format_string = log_format

    warnings.formatwarning = utils.warnings_formatter
    logging.captureWarnings(True)

    LOG.setLevel(log_level)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(log_format_string))
    LOG.addHandler(handler)
    LOG.debug("logging initialized")


def early_log_level(argv=None):
    """Pick the level before argparse runs so plugin loading is logged."""
    argv = sys.argv if argv is None else argv
    if "-d" in argv or "--debug" in argv:
        return logging.DEBUG
    return logging.INFO


def add_common_arguments(parser):
    group = parser.add_mutually_exclusive_group(required=False)
    group.add_argument(
        "-d",
        "--debug",
        dest="debug",
        action="store_true",
        help="turn on debug mode",
    )
    group.add_argument(
        "-q",
        "--quiet",
        "--silent",
        dest="quiet",
        action="store_true",
        help="only show warnings and errors",
    )
    python_ver = sys.version.replace("\n", "")
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {cape.__version__}\n"
        f"  python version = {python_ver}",
    )
    parser.set_defaults(debug=False)
    parser.set_defaults(quiet=False)


def apply_log_level(args):
    if args.quiet:
        init_logger(log_level=logging.WARN)


def add_position_arguments(parser):
    """Flags describing an unaugmented position set and its spec."""
    parser.add_argument(
        "--modality",
        dest="modality",
        action="store",
        default=None,
        choices=constants.MODALITIES,
        help="position family to embed",
    )
    parser.add_argument(
        "--dim",
        dest="dim",
        action="store",
        default=None,
        type=int,
        help="embedding width K, even",
    )
    parser.add_argument(
        "--length",
        dest="length",
        action="store",
        default=None,
        type=int,
        help="number of text tokens",
    )
    parser.add_argument(
        "--grid",
        dest="grid",
        action="store",
        default=None,
        type=int,
        help="patches per image side",
    )
    parser.add_argument(
        "--frames",
        dest="frames",
        action="store",
        default=None,
        type=int,
        help="number of audio frames",
    )
    parser.add_argument(
        "--hop",
        dest="hop",
        action="store",
        default=None,
        type=float,
        help=f"audio hop distance in seconds (default: {constants.BASE_HOP})",
    )
    parser.add_argument(
        "--layout",
        dest="layout",
        action="store",
        default=constants.CONCATENATED,
        choices=constants.LAYOUTS,
        help="embedding column layout (default: %(default)s)",
    )
    parser.add_argument(
        "--approximate",
        dest="approximate",
        action="store_true",
        help="use the linspace image frequency magnitudes",
    )


# flag required by each modality; the others contradict it
_SHAPE_FLAGS = {
    constants.TEXT: ("length",),
    constants.IMAGE: ("grid",),
    constants.AUDIO: ("frames", "hop"),
}


def check_position_flags(args, needs_shape=True):
    """Reject contradictory or missing position flags.

    :raises InvalidInputError: on a flag that does not fit the modality
    """
    if args.modality is None:
        raise utils.InvalidInputError("--modality is required")
    if args.dim is None:
        raise utils.InvalidInputError("--dim is required")
    if args.dim < 2 or args.dim % 2:
        raise utils.InvalidInputError(
            f"--dim must be even and >= 2, got {args.dim}"
        )
    own = _SHAPE_FLAGS[args.modality]
    for flags in _SHAPE_FLAGS.values():
        for flag in flags:
            if flag not in own and getattr(args, flag) is not None:
                raise utils.InvalidInputError(
                    f"--{flag} contradicts --modality {args.modality}"
                )
    if args.approximate and args.modality != constants.IMAGE:
        raise utils.InvalidInputError(
            "--approximate only applies to --modality image"
        )
    if needs_shape and getattr(args, own[0]) is None:
        raise utils.InvalidInputError(
            f"--{own[0]} is required for --modality {args.modality}"
        )


def frequency_spec(args):
    from cape.core import embeddings

    if args.modality == constants.IMAGE:
        return embeddings.FrequencySpec.image(
            args.dim, approximate=args.approximate
        )
    if args.modality == constants.AUDIO:
        return embeddings.FrequencySpec.audio(args.dim)
    return embeddings.FrequencySpec.text(args.dim)


def positions_from_args(args):
    """Unaugmented positions for the shape flags."""
    from cape.core import positions

    if args.modality == constants.IMAGE:
        return positions.image_positions(args.grid, args.grid)
    if args.modality == constants.AUDIO:
        hop = constants.BASE_HOP if args.hop is None else args.hop
        return positions.audio_positions(args.frames, hop)
    return positions.text_positions(args.length)


def embed(pos, spec, layout):
    from cape.core import embeddings

    if spec.is_planar:
        return embeddings.embed_2d(pos, spec, layout)
    return embeddings.embed_1d(pos, spec, layout)
