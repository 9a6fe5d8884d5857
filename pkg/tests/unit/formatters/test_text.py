#
# SPDX-License-Identifier: Apache-2.0
import os

import fixtures
import testtools

from cape.core import config
from cape.core import manager
from cape.formatters import text as c_text
from tests.unit.formatters import fakes


class TextFormatterTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        tmp = self.useFixture(fixtures.TempDir()).path
        self.tmp_fname = os.path.join(tmp, "results.txt")

    def _report(self, c_manager):
        with open(self.tmp_fname, "w") as tmp_file:
            c_text.report(c_manager, tmp_file)
        with open(self.tmp_fname) as f:
            return f.read()

    def test_report(self):
        data = self._report(fakes.make_manager(seed=3))
        self.assertIn("Check results:", data)
        self.assertIn("[C101:unit_circle_norms] PASS", data)
        self.assertIn("[C201:shift_identity] FAIL", data)
        self.assertIn("   shift error", data)
        self.assertIn("\tSeed: 3", data)
        self.assertIn("\tChecks run: 2", data)
        self.assertIn("\tPassed: 1", data)
        self.assertIn("\tFailed: 1", data)
        self.assertNotIn("Negative self-test", data)

    def test_quiet_shows_failures_only(self):
        data = self._report(fakes.make_manager(quiet=True))
        self.assertNotIn("C101", data.split("Run summary")[0])
        self.assertIn("C201", data)

    def test_quiet_all_passed_writes_nothing(self):
        c_manager = fakes.make_manager(quiet=True)
        del c_manager.results[1]
        self.assertEqual("", self._report(c_manager))

    def test_negative_note(self):
        data = self._report(fakes.make_manager(negative=True))
        self.assertIn("Negative self-test: fault injected", data)

    def test_no_checks(self):
        c_manager = manager.CheckManager(config.CapeConfig())
        self.assertIn("No checks selected.", c_text.get_results(c_manager))

    def test_get_summary(self):
        summary = c_text.get_summary(fakes.make_manager())
        self.assertTrue(summary.startswith("\nRun summary:"))

    def test_report_has_no_clock(self):
        data = self._report(fakes.make_manager())
        self.assertTrue(data.startswith("Check results:"))
        self.assertEqual(data, self._report(fakes.make_manager()))
