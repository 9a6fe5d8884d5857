#
# SPDX-License-Identifier: Apache-2.0
import logging

LOG = logging.getLogger(__name__)


def tags(*args):
    """Decorator function to attach filter tags to a check."""

    def wrapper(func):
        if not hasattr(func, "_tags"):
            func._tags = []
        func._tags.extend(args)

        LOG.debug("tags() decorator executed")
        LOG.debug("  func._tags: %s", func._tags)
        return func

    return wrapper


def takes_config(*args):
    """Check function takes config

    Use of this delegate before a check function indicates that it should be
    passed data from the config file. Passing a name parameter allows
    aliasing checks and thus sharing config options.
    """
    name = ""

    def _takes_config(func):
        if not hasattr(func, "_takes_config"):
            func._takes_config = name
        return func

    if len(args) == 1 and callable(args[0]):
        name = args[0].__name__
        return _takes_config(args[0])
    else:
        name = args[0]
        return _takes_config


def check_id(id_val):
    """Check function identifier

    Use this decorator before a check function indicates its simple ID
    """

    def _has_id(func):
        if not hasattr(func, "_check_id"):
            func._check_id = id_val
        return func

    return _has_id
