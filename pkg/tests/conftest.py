#
# SPDX-License-Identifier: Apache-2.0
"""Expand testscenarios scenarios when the suite is collected by pytest.

stestr/testtools apply ``scenarios`` through ``WithScenarios.run``; pytest
runs unittest test methods one by one and never does. This hook replaces a
class carrying ``scenarios`` with one subclass per scenario, each with the
scenario's attributes applied, mirroring ``testscenarios.apply_scenario``.
"""
import unittest

from _pytest import unittest as pytest_unittest


def _scenario_init(base, params):
    # Attributes go on the instance, as testscenarios does, so callables
    # such as ``func`` are not turned into bound methods.
    def __init__(self, *args, **kwargs):
        base.__init__(self, *args, **kwargs)
        for key, value in params.items():
            setattr(self, key, value)

    return __init__


def pytest_pycollect_makeitem(collector, name, obj):
    if not (
        isinstance(obj, type)
        and issubclass(obj, unittest.TestCase)
        and getattr(obj, "scenarios", None)
        and name == obj.__name__
    ):
        return None
    items = []
    for scenario_name, params in obj.scenarios:
        sub_name = f"{name}[{scenario_name}]"
        sub = type(
            sub_name,
            (obj,),
            {"scenarios": None, "__init__": _scenario_init(obj, params)},
        )
        sub.__module__ = obj.__module__
        setattr(collector.obj, sub_name, sub)
        items.append(
            pytest_unittest.UnitTestCase.from_parent(
                collector, name=sub_name, obj=sub
            )
        )
    return items
