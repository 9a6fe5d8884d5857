#
# SPDX-License-Identifier: Apache-2.0
import fixtures
import testscenarios
import testtools

from cape.core import constants
from cape.core import utils


class ParseIntListTests(testtools.TestCase):
    def test_lengths(self):
        self.assertEqual([10, 100, 1000], utils.parse_int_list("10,100,1000"))

    def test_spaces(self):
        self.assertEqual([3, 4], utils.parse_int_list(" 3, 4 "))

    def test_invalid(self):
        for text in ("", "10,,20", "ten", "5,0", None):
            self.assertRaises(
                utils.InvalidInputError, utils.parse_int_list, text
            )


class ParseSeedTests(testtools.TestCase):
    def test_bounds(self):
        self.assertEqual(0, utils.parse_seed(0))
        self.assertEqual(2**64 - 1, utils.parse_seed(str(2**64 - 1)))

    def test_rejects(self):
        for value in (-1, 2**64, "abc", None, True):
            self.assertRaises(utils.InvalidInputError, utils.parse_seed, value)

    def test_source_in_message(self):
        self.assertRaisesRegex(
            utils.InvalidInputError,
            "config seed",
            utils.parse_seed,
            "x",
            "config seed",
        )


class ResolveSeedTests(testscenarios.WithScenarios, testtools.TestCase):
    scenarios = [
        ("flag wins", dict(flag=3, conf=4, env="5", expected=3)),
        ("config over env", dict(flag=None, conf=4, env="5", expected=4)),
        ("env fallback", dict(flag=None, conf=None, env="5", expected=5)),
        ("default", dict(flag=None, conf=None, env=None, expected=0)),
    ]

    def test_precedence(self):
        self.useFixture(
            fixtures.EnvironmentVariable(constants.SEED_ENV, self.env)
        )
        self.assertEqual(
            self.expected, utils.resolve_seed(self.flag, self.conf)
        )


class ResolveSeedEnvTests(testtools.TestCase):
    def test_bad_env_seed(self):
        self.useFixture(
            fixtures.EnvironmentVariable(constants.SEED_ENV, "minus one")
        )
        self.assertRaisesRegex(
            utils.InvalidInputError, constants.SEED_ENV, utils.resolve_seed
        )


class ErrorTests(testtools.TestCase):
    def test_config_error_message(self):
        err = utils.ConfigError("Error parsing file.", "cape.yaml")
        self.assertEqual("cape.yaml : Error parsing file.", str(err))
        self.assertIsInstance(err, utils.CapeError)

    def test_profile_not_found(self):
        err = utils.ProfileNotFound("cape.yaml", "vit")
        self.assertIn("(vit)", str(err))
        self.assertEqual("vit", err.profile)

    def test_warnings_formatter(self):
        self.assertEqual("careful\n", utils.warnings_formatter("careful"))
