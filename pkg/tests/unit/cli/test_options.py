#
# SPDX-License-Identifier: Apache-2.0
import argparse
import logging
import warnings

import testscenarios
import testtools

from cape.cli import options
from cape.core import constants
from cape.core import utils


def _parse(*argv):
    parser = argparse.ArgumentParser()
    options.add_position_arguments(parser)
    options.add_common_arguments(parser)
    return parser.parse_args(list(argv))


class LoggerTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        self.logger = logging.getLogger()
        self.original_logger_handlers = self.logger.handlers
        self.original_logger_level = self.logger.level
        self.logger.handlers = []

    def tearDown(self):
        super().tearDown()
        self.logger.handlers = self.original_logger_handlers
        self.logger.level = self.original_logger_level

    def test_init_logger(self):
        options.init_logger()
        self.assertEqual(1, len(self.logger.handlers))
        self.assertEqual(logging.INFO, self.logger.level)

    def test_init_logger_formats_warnings(self):
        original = warnings.formatwarning
        self.addCleanup(setattr, warnings, "formatwarning", original)
        self.addCleanup(logging.captureWarnings, False)
        options.init_logger()
        self.assertIs(utils.warnings_formatter, warnings.formatwarning)
        self.assertEqual(
            "careful\n", warnings.formatwarning("careful", UserWarning, "f", 1)
        )

    def test_init_logger_custom_format(self):
        options.init_logger(logging.DEBUG, "%(message)s")
        self.assertEqual(logging.DEBUG, self.logger.level)
        self.assertEqual(
            "%(message)s", self.logger.handlers[0].formatter._fmt
        )

    def test_early_log_level(self):
        self.assertEqual(
            logging.DEBUG, options.early_log_level(["cape", "-d"])
        )
        self.assertEqual(logging.INFO, options.early_log_level(["cape"]))

    def test_quiet(self):
        options.apply_log_level(_parse("-q"))
        self.assertEqual(logging.WARN, self.logger.level)


class PositionFlagErrorTests(testscenarios.WithScenarios, testtools.TestCase):
    scenarios = [
        ("no modality", dict(argv=["--dim", "8"])),
        ("no dim", dict(argv=["--modality", "text", "--length", "3"])),
        ("odd dim", dict(argv=["--modality", "text", "--dim", "7"])),
        (
            "grid on text",
            dict(argv=["--modality", "text", "--dim", "8", "--grid", "3"]),
        ),
        (
            "hop on image",
            dict(argv=["--modality", "image", "--dim", "8", "--hop", "1"]),
        ),
        (
            "approximate on audio",
            dict(
                argv=[
                    "--modality",
                    "audio",
                    "--dim",
                    "8",
                    "--frames",
                    "2",
                    "--approximate",
                ]
            ),
        ),
        ("missing length", dict(argv=["--modality", "text", "--dim", "8"])),
    ]

    def test_rejected(self):
        self.assertRaises(
            utils.InvalidInputError,
            options.check_position_flags,
            _parse(*self.argv),
        )


class PositionFlagTests(testtools.TestCase):
    def test_shape_optional(self):
        args = _parse("--modality", "audio", "--dim", "4")
        options.check_position_flags(args, needs_shape=False)

    def test_default_hop(self):
        args = _parse("--modality", "audio", "--dim", "4", "--frames", "3")
        options.check_position_flags(args)
        pos = options.positions_from_args(args)
        self.assertAlmostEqual(2 * constants.BASE_HOP, pos.values[0, 2])

    def test_image_embedding(self):
        args = _parse("--modality", "image", "--dim", "8", "--grid", "3")
        spec = options.frequency_spec(args)
        pos = options.positions_from_args(args)
        emb = options.embed(pos, spec, constants.CONCATENATED)
        self.assertEqual((9, 8), emb.rows().shape)
