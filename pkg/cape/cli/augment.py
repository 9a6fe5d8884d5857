#
# SPDX-License-Identifier: Apache-2.0
"""Augment a position set with CAPE and write positions and embeddings.

The augmentation config comes either from a strict JSON file
(``--config``) or from a named preset (``--profile``); presets in the
project config file (``-c``) override the built-in ones. Identical
invocations write identical files.
"""
import argparse
import logging
import sys

import numpy as np

from cape.cli import options
from cape.core import augmentation
from cape.core import config as c_config
from cape.core import constants
from cape.core import serialization
from cape.core import utils

LOG = logging.getLogger(__name__)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cape-augment",
        description="Apply CAPE train-time augmentation to a position set",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    source = parser.add_mutually_exclusive_group(required=False)
    source.add_argument(
        "--config",
        dest="augment_config",
        action="store",
        default=None,
        help="JSON augmentation config",
    )
    source.add_argument(
        "--profile",
        dest="profile",
        action="store",
        default=None,
        help="augmentation preset, e.g. "
        + ", ".join(sorted(constants.PRESETS)),
    )
    parser.add_argument(
        "-c",
        "--configfile",
        dest="config_file",
        action="store",
        default=None,
        type=str,
        help="optional project config file supplying presets and the seed",
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        action="store",
        default=None,
        help="64-bit seed; overrides the config seed and "
        f"{constants.SEED_ENV}",
    )
    parser.add_argument(
        "--positions",
        dest="positions",
        action="store",
        default=None,
        help="position file to augment instead of the shape flags",
    )
    parser.add_argument(
        "--batch",
        dest="batch",
        action="store",
        default=1,
        type=int,
        help="number of augmented copies of generated positions",
    )
    options.add_position_arguments(parser)
    parser.add_argument(
        "--out-positions",
        dest="out_positions",
        action="store",
        default=None,
        help="augmented position file to write",
    )
    parser.add_argument(
        "--out",
        dest="out",
        action="store",
        default=None,
        help="embedding file to write (default: standard output)",
    )
    options.add_common_arguments(parser)
    return parser


def _load_augmentation(args, project, pos):
    if args.augment_config:
        data = augmentation.read_json_config(args.augment_config)
        cfg = augmentation.AugmentationConfig.from_file_data(
            data, args.augment_config
        )
        # an absent seed falls through to the environment
        config_seed = data.get("seed")
    elif args.profile:
        n_patches = None
        if isinstance(pos, augmentation.PositionGrid2D):
            n_patches = pos.shape[-1]
        cfg = augmentation.get_preset(args.profile, project, n_patches)
        config_seed = project.seed
    else:
        raise utils.InvalidInputError("one of --config or --profile is needed")
    seed = utils.resolve_seed(args.seed, config_seed)
    LOG.info("augmenting with %r, seed %d", cfg, seed)
    return cfg.replace(seed=seed)


def _input_positions(args):
    if args.positions:
        shape_flags = ("length", "grid", "frames", "hop")
        if any(getattr(args, flag) is not None for flag in shape_flags):
            raise utils.InvalidInputError(
                "--positions cannot be combined with shape flags"
            )
        pos = serialization.load_positions(args.positions)
        is_grid = isinstance(pos, augmentation.PositionGrid2D)
        if is_grid != (args.modality == constants.IMAGE):
            raise utils.InvalidInputError(
                f"{args.positions} does not hold {args.modality} positions"
            )
        return pos
    pos = options.positions_from_args(args)
    if args.modality == constants.IMAGE:
        return pos
    return augmentation.PositionSet1D(
        np.repeat(pos.values, args.batch, axis=0)
    )


def augment(args, cfg, pos):
    """Augmented positions for the parsed arguments."""
    if isinstance(pos, augmentation.PositionGrid2D):
        if args.positions:
            return augmentation.augment_grid_positions(pos, cfg)
        # generated grids follow the reference linspace layout
        return augmentation.augment_grid_2d(args.grid, args.batch, cfg)
    return augmentation.augment_positions_1d(pos, cfg)


def main():
    """cape-augment CLI."""
    options.init_logger(options.early_log_level())
    parser = _build_parser()
    args = parser.parse_args()
    options.apply_log_level(args)

    try:
        options.check_position_flags(args, needs_shape=not args.positions)
        if args.batch < 1:
            raise utils.InvalidInputError(
                f"--batch must be >= 1: {args.batch}"
            )
        project = c_config.CapeConfig(config_file=args.config_file)
        if project.get_option("log_format"):
            options.init_logger(
                options.early_log_level(), project.get_option("log_format")
            )
        pos = _input_positions(args)
        cfg = _load_augmentation(args, project, pos)
    except (utils.CapeError, OSError) as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    try:
        spec = options.frequency_spec(args)
        augmented = augment(args, cfg, pos)
        emb = options.embed(augmented, spec, args.layout)
        if args.out_positions:
            serialization.save_positions(args.out_positions, augmented)
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
