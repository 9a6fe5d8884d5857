#
# SPDX-License-Identifier: Apache-2.0
import sys

from stevedore import extension


class Manager:
    def __init__(
        self,
        formatters_namespace="cape.formatters",
        checks_namespace="cape.checks",
    ):
        # Cache the extension managers, loaded extensions, and extension names
        self.load_formatters(formatters_namespace)
        self.load_checks(checks_namespace)

    def load_formatters(self, formatters_namespace):
        self.formatters_mgr = extension.ExtensionManager(
            namespace=formatters_namespace,
            invoke_on_load=False,
            verify_requirements=False,
        )
        self.formatters = list(self.formatters_mgr)
        self.formatter_names = self.formatters_mgr.names()

    def load_checks(self, checks_namespace):
        self.checks_mgr = extension.ExtensionManager(
            namespace=checks_namespace,
            invoke_on_load=False,
            verify_requirements=False,
        )

        def check_has_id(plugin):
            if not hasattr(plugin.plugin, "_check_id"):
                # logger not setup yet, so using print
                print(
                    f"WARNING: Check '{plugin.name}' has no ID, skipping.",
                    file=sys.stderr,
                )
                return False
            return True

        self.checks = list(filter(check_has_id, list(self.checks_mgr)))
        self.check_names = [plugin.name for plugin in self.checks]
        self.checks_by_id = {p.plugin._check_id: p for p in self.checks}
        self.checks_by_name = {p.name: p for p in self.checks}

    def get_check_id(self, check_name):
        if check_name in self.checks_by_name:
            return self.checks_by_name[check_name].plugin._check_id
        return None

    def validate_profile(self, profile):
        """Validate that everything in the selection looks good."""
        for inc in profile["include"]:
            if not self.check_id(inc):
                raise ValueError(f"Unknown check found in selection: {inc}")

        for exc in profile["exclude"]:
            if not self.check_id(exc):
                raise ValueError(f"Unknown check found in selection: {exc}")

        union = set(profile["include"]) & set(profile["exclude"])
        if len(union) > 0:
            raise ValueError(
                f"Non-exclusive include/exclude check sets: {union}"
            )

    def check_id(self, check):
        return check in self.checks_by_id


# Using entry-points *can* be expensive. So let's load these once, store
# them on the object, and have a module global object for accessing them.
# After the first time this module is imported, it should save this
# attribute on the module and not have to reload the entry-points.
MANAGER = Manager()
