#
# SPDX-License-Identifier: Apache-2.0
import io
from unittest import mock

import testtools
from stevedore import extension

from cape.core import check_properties as check
from cape.core import config
from cape.core import extension_loader
from cape.core import manager
from cape.core import result

SEEN = []


@check.check_id("C001")
def passing_check(context):
    SEEN.append((context.check_id, context.seed, context.negative))
    return result.Measurement(1e-12, 1e-9, detail="fine")


@check.check_id("C002")
def failing_check(context):
    return result.Measurement(1.0, 0.5)


@check.check_id("C003")
def raising_check(context):
    raise ValueError("broken")


def fake_formatter(manager, fileobj):
    fileobj.write(f"{len(manager.results)} results")


class ManagerTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        del SEEN[:]
        checks = extension.ExtensionManager.make_test_instance(
            [
                extension.Extension(
                    "passing_check", None, passing_check, None
                ),
                extension.Extension(
                    "failing_check", None, failing_check, None
                ),
                extension.Extension(
                    "raising_check", None, raising_check, None
                ),
            ]
        )
        formatters = extension.ExtensionManager.make_test_instance(
            [extension.Extension("fake", None, fake_formatter, None)]
        )

        def _make(namespace, **kwargs):
            if namespace == "cape.formatters":
                return formatters
            return checks

        patcher = mock.patch(
            "stevedore.extension.ExtensionManager", side_effect=_make
        )
        patcher.start()
        self.addCleanup(patcher.stop)
        self.old_ext_man = extension_loader.MANAGER
        extension_loader.MANAGER = extension_loader.Manager()
        self.addCleanup(setattr, extension_loader, "MANAGER", self.old_ext_man)
        self.config = config.CapeConfig()

    def _manager(self, **kwargs):
        return manager.CheckManager(self.config, **kwargs)

    def test_create_manager(self):
        m = self._manager(seed=5, debug=True)
        self.assertTrue(m.debug)
        self.assertFalse(m.quiet)
        self.assertEqual(5, m.seed)
        self.assertEqual([], m.results)

    def test_run_checks(self):
        m = self._manager(seed=9)
        m.run_checks()
        self.assertEqual(
            ["C001", "C002", "C003"], [r.check_id for r in m.results]
        )
        self.assertEqual(
            ["PASS", "FAIL", "FAIL"], [r.status for r in m.results]
        )
        self.assertEqual([("C001", 9, False)], SEEN)

    def test_exception_becomes_failure(self):
        m = self._manager(profile={"include": ["C003"]})
        m.run_checks()
        (outcome,) = m.results
        self.assertFalse(outcome.passed)
        self.assertIsNone(outcome.measured)
        self.assertEqual("ValueError: broken", outcome.detail)

    def test_negative_flag_reaches_context(self):
        m = self._manager(negative=True, profile={"include": ["C001"]})
        m.run_checks()
        self.assertEqual([("C001", 0, True)], SEEN)

    def test_failures(self):
        m = self._manager()
        m.run_checks()
        self.assertEqual(2, m.failures_count())
        self.assertEqual(
            ["C002", "C003"], [r.check_id for r in m.get_failures()]
        )

    def test_output_results(self):
        m = self._manager()
        m.run_checks()
        out = io.StringIO()
        m.output_results(out, "fake")
        self.assertEqual("3 results", out.getvalue())

    def test_output_results_formatter_error(self):
        m = self._manager()
        self.assertRaisesRegex(
            RuntimeError,
            "'fake' formatter",
            m.output_results,
            None,
            "fake",
        )
