#
# SPDX-License-Identifier: Apache-2.0
import os
import tempfile
import textwrap
import uuid

import fixtures
import testtools

from cape.core import config
from cape.core import utils


class TempFile(fixtures.Fixture):
    def __init__(self, contents=None, suffix=".yaml"):
        super().__init__()
        self.contents = contents
        self.suffix = suffix

    def setUp(self):
        super().setUp()

        with tempfile.NamedTemporaryFile(
            suffix=self.suffix, mode="wt", delete=False
        ) as f:
            if self.contents:
                f.write(self.contents)

        self.addCleanup(os.unlink, f.name)

        self.name = f.name


class TestInit(testtools.TestCase):
    def test_settings(self):
        example_key = uuid.uuid4().hex
        example_value = self.getUniqueString()
        contents = f"{example_key}: {example_value}"
        f = self.useFixture(TempFile(contents))
        c_config = config.CapeConfig(f.name)

        self.assertEqual({example_key: example_value}, c_config.config)
        self.assertEqual(example_value, c_config.get_option(example_key))

    def test_no_file(self):
        c_config = config.CapeConfig()
        self.assertEqual({}, c_config.config)
        self.assertIsNone(c_config.seed)

    def test_file_does_not_exist(self):
        cfg_file = os.path.join(os.getcwd(), "notafile")
        self.assertRaisesRegex(
            utils.ConfigError, cfg_file, config.CapeConfig, cfg_file
        )

    def test_yaml_invalid(self):
        # starts a sequence and never ends it
        invalid_yaml = "- [ something"
        f = self.useFixture(TempFile(invalid_yaml))
        self.assertRaisesRegex(
            utils.ConfigError, f.name, config.CapeConfig, f.name
        )

    def test_empty_file(self):
        f = self.useFixture(TempFile(""))
        self.assertEqual({}, config.CapeConfig(f.name).config)

    def test_not_a_mapping(self):
        f = self.useFixture(TempFile("- C101\n- C102\n"))
        self.assertRaises(utils.ConfigError, config.CapeConfig, f.name)


class TestToml(testtools.TestCase):
    def setUp(self):
        super().setUp()
        if config.tomllib is None:
            self.skipTest("no toml parser available")

    def test_tool_table(self):
        contents = textwrap.dedent(
            """
            [tool.cape]
            seed = 11
            skips = ["C201"]

            [tool.other]
            seed = 3
            """
        )
        f = self.useFixture(TempFile(contents, suffix=".toml"))
        c_config = config.CapeConfig(f.name)
        self.assertEqual(11, c_config.seed)
        self.assertEqual(["C201"], c_config.get_option("skips"))

    def test_toml_invalid(self):
        f = self.useFixture(TempFile("[tool.cape\n", suffix=".toml"))
        self.assertRaises(utils.ConfigError, config.CapeConfig, f.name)


class TestGetOption(testtools.TestCase):
    def setUp(self):
        super().setUp()
        sample_yaml = textwrap.dedent(
            """
            profiles:
                vit:
                    max_global_shift: 0.5
                    max_scale: 1.4
            seed: 42
            """
        )
        f = self.useFixture(TempFile(sample_yaml))
        self.c_config = config.CapeConfig(f.name)

    def test_levels(self):
        self.assertEqual(
            0.5, self.c_config.get_option("profiles.vit.max_global_shift")
        )

    def test_missing_level(self):
        self.assertIsNone(self.c_config.get_option("profiles.asr.max_scale"))
        self.assertIsNone(self.c_config.get_option("seed.value"))

    def test_seed(self):
        self.assertEqual(42, self.c_config.seed)


class TestValidate(testtools.TestCase):
    def _load(self, contents):
        f = self.useFixture(TempFile(contents))
        return f.name

    def test_tests_must_be_list(self):
        path = self._load("tests: C101\n")
        self.assertRaisesRegex(
            utils.ConfigError,
            "'tests' must be a list",
            config.CapeConfig,
            path,
        )

    def test_skips_must_be_list(self):
        path = self._load("skips: {C101: true}\n")
        self.assertRaises(utils.ConfigError, config.CapeConfig, path)

    def test_profiles_must_be_mappings(self):
        path = self._load("profiles:\n  vit: 3\n")
        self.assertRaises(utils.ConfigError, config.CapeConfig, path)

    def test_bad_seed(self):
        path = self._load("seed: -4\n")
        self.assertRaisesRegex(
            utils.ConfigError, "config seed", config.CapeConfig, path
        )

    def test_valid(self):
        path = self._load("tests: [C101]\nskips: []\nseed: 0\n")
        self.assertEqual(["C101"], config.CapeConfig(path).get_option("tests"))
