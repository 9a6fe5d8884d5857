#
# SPDX-License-Identifier: Apache-2.0
import logging
import os
import sys
import time
import traceback

from rich import console as rich_console
from rich import progress

from cape.core import check_set
from cape.core import context as c_context
from cape.core import extension_loader
from cape.core import result as c_result

LOG = logging.getLogger(__name__)
PROGRESS_THRESHOLD = 10


class CheckManager:
    def __init__(
        self,
        config,
        seed=0,
        debug=False,
        quiet=False,
        profile=None,
        name_filter=None,
        negative=False,
    ):
        """Get config, check set and result store ready

        :param config: config options object
        :type config: cape.core.config.CapeConfig
        :param seed: seed every check stream is derived from
        :param debug: Whether to show debug messages or not
        :param quiet: Whether to only show output in the case of a failure
        :param profile: dict of check ids to include and exclude
        :param name_filter: substring or glob on check names and tags
        :param negative: inject a known fault so that checks must fail
        """
        self.debug = debug
        self.quiet = quiet
        if not profile:
            profile = {}
        self.c_conf = config
        self.seed = seed
        self.negative = negative
        self.results = []
        self.c_cs = check_set.CheckSet(config, profile, name_filter)

    def get_failures(self):
        return [r for r in self.results if not r.passed]

    def failures_count(self):
        return len(self.get_failures())

    def output_results(self, output_file, output_format):
        """Outputs results from the result store

        :param output_file: File to store results
        :param output_format: output format plugin name
        :return: -
        """
        try:
            formatters_mgr = extension_loader.MANAGER.formatters_mgr
            if output_format not in formatters_mgr:
                output_format = (
                    "screen"
                    if (
                        sys.stdout.isatty()
                        and os.getenv("NO_COLOR") is None
                        and os.getenv("TERM") != "dumb"
                    )
                    else "txt"
                )

            formatter = formatters_mgr[output_format]
            report_func = formatter.plugin
            report_func(self, fileobj=output_file)

        except Exception as e:
            raise RuntimeError(
                f"Unable to output report using "
                f"'{output_format}' formatter: {str(e)}"
            )

    def run_checks(self):
        """Runs through all selected checks and stores the results."""
        checks = self.c_cs.get_checks()
        # if we have problems with a check, we want to know which one
        if len(checks) > PROGRESS_THRESHOLD and not self.quiet:
            checks = progress.track(
                checks,
                description="Running checks",
                console=rich_console.Console(stderr=True),
            )

        for name, func in checks:
            self.results.append(self._run_check(name, func))

    def _run_check(self, name, func):
        check_id = func._check_id
        ctx = c_context.CheckContext(check_id, self.seed, self.negative)
        config = getattr(func, "_config", None)
        start = time.perf_counter()
        try:
            if hasattr(func, "_takes_config"):
                measurement = func(ctx, config)
            else:
                measurement = func(ctx)
        except Exception as e:
            LOG.error("Check %s (%s) raised: %s", name, check_id, e)
            LOG.debug(traceback.format_exc())
            return c_result.CheckResult.from_error(check_id, name, e)
        elapsed = time.perf_counter() - start
        outcome = c_result.CheckResult.from_measurement(
            check_id, name, measurement
        )
        LOG.debug("%s in %.3fs", outcome, elapsed)
        return outcome
