#
# SPDX-License-Identifier: Apache-2.0
import fnmatch
import importlib
import logging

from cape.core import extension_loader

LOG = logging.getLogger(__name__)

GLOB_CHARS = frozenset("*?[")


class CheckSet:
    def __init__(self, config, profile=None, name_filter=None):
        """Select the checks to run and bind their configuration.

        :param config: CapeConfig
        :param profile: dict with ``include`` and ``exclude`` id sets
        :param name_filter: optional tag, check name or glob matched
            against check names and tags
        """
        if not profile:
            profile = {}
        extman = extension_loader.MANAGER
        filtering = self._get_filter(profile)
        self.plugins = [
            p for p in extman.checks if p.plugin._check_id in filtering
        ]
        if name_filter:
            self.plugins = [
                p for p in self.plugins if _matches(p, name_filter)
            ]
        self.plugins.sort(key=lambda p: _id_key(p.plugin._check_id))
        self._load_checks(config, self.plugins)

    @staticmethod
    def _get_filter(profile):
        extman = extension_loader.MANAGER

        inc = set(profile.get("include", []))
        exc = set(profile.get("exclude", []))

        if inc:
            filtered = inc
        else:
            filtered = set(extman.checks_by_id.keys())
        return filtered - exc

    def _load_checks(self, config, plugins):
        """Builds the ordered list of (name, function) pairs."""
        self.checks = []
        for plugin in plugins:
            if hasattr(plugin.plugin, "_takes_config"):
                cfg = config.get_option(plugin.plugin._takes_config)
                if cfg is None:
                    genner = importlib.import_module(plugin.plugin.__module__)
                    cfg = genner.gen_config(plugin.plugin._takes_config)
                plugin.plugin._config = cfg
            self.checks.append((plugin.name, plugin.plugin))
            LOG.debug(
                "added check %s (%s)", plugin.name, plugin.plugin._check_id
            )

    def get_checks(self):
        return list(self.checks)


def _matches(plugin, name_filter):
    # a bare word names a tag or a check exactly, anything else is a glob
    candidates = [plugin.name] + list(getattr(plugin.plugin, "_tags", []))
    if not GLOB_CHARS.intersection(name_filter):
        return name_filter in candidates
    return any(fnmatch.fnmatch(c, name_filter) for c in candidates)


def _id_key(check_id):
    # C101 < C1001 numerically
    digits = "".join(ch for ch in check_id if ch.isdigit())
    return (int(digits) if digits else 0, check_id)
