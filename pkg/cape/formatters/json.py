#
# SPDX-License-Identifier: Apache-2.0
r"""
==============
JSON formatter
==============

This formatter outputs the check results in JSON.

:Example:

.. code-block:: javascript

    {
      "negative_self_test": false,
      "results": [
        {
          "check_id": "C201",
          "check_name": "shift_identity",
          "comparison": "<=",
          "detail": "max |E(p+m) - S^m E(p)|",
          "measured": 4.37e-11,
          "status": "PASS",
          "tolerance": 1e-09
        }
      ],
      "seed": 0,
      "totals": {
        "failed": 0,
        "passed": 1,
        "run": 1
      }
    }

Non-finite measurements are written as ``null``.
"""
import json
import logging
import math
import sys

LOG = logging.getLogger(__name__)


def _finite_or_none(value):
    if value is None or math.isfinite(value):
        return value
    return None


def report(manager, fileobj):
    """Prints check results in JSON format

    :param manager: the cape check manager object
    :param fileobj: The output file object, which may be sys.stdout
    """

    collector = []
    for r in manager.results:
        d = r.as_dict()
        d["measured"] = _finite_or_none(d["measured"])
        collector.append(d)

    failed = manager.failures_count()
    machine_output = {
        "results": collector,
        "seed": manager.seed,
        "negative_self_test": manager.negative,
        "totals": {
            "run": len(collector),
            "passed": len(collector) - failed,
            "failed": failed,
        },
    }

    result = json.dumps(
        machine_output, sort_keys=True, indent=2, separators=(",", ": ")
    )

    with fileobj:
        fileobj.write(result)

    if fileobj.name != sys.stdout.name:
        LOG.info("JSON output written to file: %s", fileobj.name)
