#
# SPDX-License-Identifier: Apache-2.0
r"""
=============
CSV Formatter
=============

This formatter outputs the check results in a comma separated values format.

:Example:

.. code-block:: none

    check_id,check_name,status,measured,comparison,tolerance,detail
    C101,unit_circle_norms,PASS,2.220446049250313e-16,<=,1e-12,max |cos^2 +
    sin^2 - 1|

"""
import csv
import logging
import sys

LOG = logging.getLogger(__name__)


def report(manager, fileobj):
    """Prints check results in CSV format

    :param manager: the cape check manager object
    :param fileobj: The output file object, which may be sys.stdout
    """

    with fileobj:
        fieldnames = [
            "check_id",
            "check_name",
            "status",
            "measured",
            "comparison",
            "tolerance",
            "detail",
        ]

        writer = csv.DictWriter(
            fileobj, fieldnames=fieldnames, extrasaction="ignore"
        )
        writer.writeheader()
        for result in manager.results:
            writer.writerow(result.as_dict())

    if fileobj.name != sys.stdout.name:
        LOG.info("CSV output written to file: %s", fileobj.name)
