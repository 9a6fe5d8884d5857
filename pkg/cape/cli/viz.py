#
# SPDX-License-Identifier: Apache-2.0
"""Render selected components of an image embedding as PGM files.

Each selected component of the P x P patch grid becomes one ASCII PGM
image, gray level ``round(255 (v + 1) / 2)``.
"""
import argparse
import logging
import os
import sys

from cape.cli import options
from cape.core import augmentation
from cape.core import constants
from cape.core import embeddings
from cape.core import positions
from cape.core import serialization
from cape.core import utils

LOG = logging.getLogger(__name__)

DEFAULT_STRIDE = 20


class VizRequest:
    def __init__(
        self,
        grid_side,
        dim,
        stride=DEFAULT_STRIDE,
        out_dir=".",
        gamma=1.0,
        approximate=False,
    ):
        if grid_side < 1:
            raise utils.InvalidInputError(f"--grid must be >= 1: {grid_side}")
        if stride < 1:
            raise utils.InvalidInputError(f"--stride must be >= 1: {stride}")
        self.grid_side = grid_side
        self.dim = dim
        self.stride = stride
        self.out_dir = out_dir
        self.gamma = gamma
        self.approximate = approximate

    @property
    def components(self):
        return list(range(0, self.dim, self.stride))

    def path(self, component):
        return os.path.join(self.out_dir, f"component_{component:03d}.pgm")


def component_images(request):
    """Yield (component, P x P array) for every selected component."""
    spec = embeddings.FrequencySpec.image(
        request.dim, approximate=request.approximate
    )
    grid = positions.image_positions(request.grid_side, request.grid_side)
    if request.gamma != 1.0:
        grid = augmentation.rescale_eval_positions(grid, request.gamma)
    matrix = embeddings.embed_2d(grid, spec).rows()
    side = request.grid_side
    for component in request.components:
        yield component, matrix[:, component].reshape(side, side)


def render(request):
    """Write one PGM per selected component; returns the written paths."""
    if not os.path.isdir(request.out_dir):
        raise utils.InvalidInputError(
            f"No such directory: {request.out_dir}"
        )
    if not os.access(request.out_dir, os.W_OK):
        raise utils.InvalidInputError(
            f"Directory is not writable: {request.out_dir}"
        )
    written = []
    for component, image in component_images(request):
        path = request.path(component)
        serialization.save_pgm(path, image)
        written.append(path)
    LOG.info(
        "%d images written to directory: %s", len(written), request.out_dir
    )
    return written


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cape-viz",
        description="Dump image embedding components as PGM images",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--grid",
        dest="grid",
        action="store",
        default=constants.VIT_PATCHES,
        type=int,
        help="patches per image side (default: %(default)s)",
    )
    parser.add_argument(
        "--dim",
        dest="dim",
        action="store",
        default=768,
        type=int,
        help="embedding width K (default: %(default)s)",
    )
    parser.add_argument(
        "--stride",
        dest="stride",
        action="store",
        default=DEFAULT_STRIDE,
        type=int,
        help="render every n-th component (default: %(default)s)",
    )
    parser.add_argument(
        "--out-dir",
        dest="out_dir",
        action="store",
        default=".",
        help="existing directory receiving the images",
    )
    parser.add_argument(
        "--gamma",
        dest="gamma",
        action="store",
        default=1.0,
        type=float,
        help="evaluation rescaling, coordinates span [-gamma, gamma]",
    )
    parser.add_argument(
        "--approximate",
        dest="approximate",
        action="store_true",
        help="use the linspace frequency magnitudes",
    )
    options.add_common_arguments(parser)
    return parser


def main():
    """cape-viz CLI."""
    options.init_logger(options.early_log_level())
    parser = _build_parser()
    args = parser.parse_args()
    options.apply_log_level(args)

    try:
        request = VizRequest(
            args.grid,
            args.dim,
            args.stride,
            args.out_dir,
            args.gamma,
            args.approximate,
        )
        render(request)
    except (utils.CapeError, OSError) as e:
        LOG.error(e)
        sys.exit(constants.EXIT_USAGE)

    sys.exit(constants.EXIT_OK)


if __name__ == "__main__":
    main()
