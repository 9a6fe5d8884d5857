#
# SPDX-License-Identifier: Apache-2.0
r"""
================
Screen formatter
================

This formatter outputs the check results in a format suitable for a
terminal: passes in green and failures in red.

:Example:

.. code-block:: none

    Check results:
    [C101:unit_circle_norms] PASS 2.220e-16 <= 1.0e-12
    [C201:shift_identity] FAIL 1.999e+00 <= 1.0e-09
       max |E(p+m) - S^m E(p)|

    Run summary:
        Seed: 0
        Checks run: 2
        Passed: 1
        Failed: 1

"""
import logging
import sys

from cape.formatters import text

IS_WIN_PLATFORM = sys.platform.startswith("win32")
COLORAMA = False

# This fixes terminal colors not displaying properly on Windows systems.
# Colorama will intercept any ANSI escape codes and convert them to the
# proper Windows console API calls to change text color.
if IS_WIN_PLATFORM:
    try:
        import colorama
    except ImportError:
        pass
    else:
        COLORAMA = True


LOG = logging.getLogger(__name__)

COLOR = {
    "DEFAULT": "\033[0m",
    "HEADER": "\033[95m",
    "PASS": "\033[92m",
    "FAIL": "\033[91m",
}


def header(text, *args):
    return f"{COLOR['HEADER']}{text % args}{COLOR['DEFAULT']}"


def _output_result_str(result):
    bits = [f"{COLOR[result.status]}{result}{COLOR['DEFAULT']}"]
    # details only for failures, passes stay on one line
    if result.detail and not result.passed:
        bits.append(f"   {result.detail}")
    return "\n".join(bits)


def get_results(manager):
    shown = manager.get_failures() if manager.quiet else manager.results
    if not shown:
        return "\tNo checks selected." if not manager.results else ""
    return "\n".join(_output_result_str(r) for r in shown)


def do_print(bits):
    # needed so we can mock this stuff
    print("\n".join([bit for bit in bits]))


def report(manager, fileobj):
    """Prints check results formatted for screen reading

    This makes use of VT100 terminal codes for colored text.

    :param manager: the cape check manager object
    :param fileobj: The output file object, which may be sys.stdout
    """

    if IS_WIN_PLATFORM and COLORAMA:
        colorama.init()

    bits = []
    if not manager.quiet or manager.failures_count():
        bits.append(header("Check results:"))
        bits.append(get_results(manager))
        bits.append(header("%s", text.get_summary(manager)))
        do_print(bits)

    if fileobj.name != sys.stdout.name:
        LOG.info(
            "Screen formatter output was not written to file: %s, "
            "consider '-f txt'",
            fileobj.name,
        )

    if IS_WIN_PLATFORM and COLORAMA:
        colorama.deinit()
