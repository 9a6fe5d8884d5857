#
# SPDX-License-Identifier: Apache-2.0
import os
from unittest import mock

import fixtures
import testtools

from cape.formatters import screen
from tests.unit.formatters import fakes


class ScreenFormatterTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        tmp = self.useFixture(fixtures.TempDir()).path
        self.tmp_fname = os.path.join(tmp, "results.txt")

    @mock.patch("cape.formatters.screen.do_print")
    def test_report(self, m_print):
        c_manager = fakes.make_manager()
        with open(self.tmp_fname, "w") as tmp_file:
            screen.report(c_manager, tmp_file)

        bits = m_print.call_args[0][0]
        self.assertEqual(4, len(bits))
        self.assertEqual(
            screen.header("\nCheck results:"), bits[1]
        )
        results = bits[2]
        self.assertIn(
            f"{screen.COLOR['PASS']}[C101:unit_circle_norms] PASS", results
        )
        self.assertIn(
            f"{screen.COLOR['FAIL']}[C201:shift_identity] FAIL", results
        )
        # only failures carry details
        self.assertIn("shift error", results)
        self.assertNotIn("norm error", results)
        self.assertIn("Failed: 1", bits[3])

        with open(self.tmp_fname) as f:
            self.assertEqual("", f.read())

    @mock.patch("cape.formatters.screen.do_print")
    def test_quiet_all_passed_prints_nothing(self, m_print):
        c_manager = fakes.make_manager(quiet=True)
        del c_manager.results[1]
        with open(self.tmp_fname, "w") as tmp_file:
            screen.report(c_manager, tmp_file)
        m_print.assert_not_called()

    def test_header(self):
        self.assertEqual(
            f"{screen.COLOR['HEADER']}Seed: 4{screen.COLOR['DEFAULT']}",
            screen.header("Seed: %s", 4),
        )
