#
# SPDX-License-Identifier: Apache-2.0
r"""
==============
Text Formatter
==============

This formatter outputs the check results as plain text.

:Example:

.. code-block:: none

    Check results:
    [C101:unit_circle_norms] PASS 2.220e-16 <= 1.0e-12
       max |cos^2 + sin^2 - 1|
    [C201:shift_identity] PASS 4.370e-11 <= 1.0e-09
       max |E(p+m) - S^m E(p)|
    --------------------------------------------------

    Run summary:
        Seed: 0
        Checks run: 2
        Passed: 2
        Failed: 0

"""
import logging
import sys

from cape.formatters import utils

LOG = logging.getLogger(__name__)


def _output_result_str(result, indent=""):
    bits = [f"{indent}{result}"]
    if result.detail:
        bits.append(f"{indent}   {result.detail}")
    return "\n".join(bits)


def get_results(manager):
    results = manager.results
    if not manager.quiet:
        shown = results
    else:
        shown = manager.get_failures()
    if not shown:
        return "\tNo checks selected." if not results else "\tAll passed."
    bits = [_output_result_str(r) for r in shown]
    bits.append("-" * 50)
    return "\n".join(bits)


def get_summary(manager):
    failed = manager.failures_count()
    bits = [
        "\nRun summary:",
        f"\tSeed: {manager.seed}",
        f"\tChecks run: {len(manager.results)}",
        f"\tPassed: {len(manager.results) - failed}",
        f"\tFailed: {failed}",
    ]
    if manager.negative:
        bits.append("\tNegative self-test: fault injected")
    return "\n".join(bits)


def report(manager, fileobj):
    """Prints check results in the text format

    :param manager: the cape check manager object
    :param fileobj: The output file object, which may be sys.stdout
    """

    bits = []

    if not manager.quiet or manager.failures_count():
        bits.append("Check results:")
        bits.append(get_results(manager))
        bits.append(get_summary(manager))
        result = "\n".join(bits) + "\n"

        with fileobj:
            wrapped_file = utils.wrap_file_object(fileobj)
            wrapped_file.write(result)

    if fileobj.name != sys.stdout.name:
        LOG.info("Text output written to file: %s", fileobj.name)
