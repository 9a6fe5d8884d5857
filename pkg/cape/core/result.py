#
# SPDX-License-Identifier: Apache-2.0
import math

AT_MOST = "<="
ABOVE = ">"
COMPARISONS = (AT_MOST, ABOVE)


class Measurement:
    """What a check measured and the bound it was held to."""

    def __init__(self, value, tolerance, comparison=AT_MOST, detail=""):
        if comparison not in COMPARISONS:
            raise ValueError(f"Unknown comparison: {comparison}")
        self.value = float(value)
        self.tolerance = float(tolerance)
        self.comparison = comparison
        self.detail = detail

    @property
    def passed(self):
        # NaN never passes
        if math.isnan(self.value):
            return False
        if self.comparison == AT_MOST:
            return self.value <= self.tolerance
        return self.value > self.tolerance


class CheckResult:
    def __init__(
        self,
        check_id,
        name,
        passed,
        measured=None,
        tolerance=None,
        comparison=AT_MOST,
        detail="",
    ):
        self.check_id = check_id
        self.name = name
        self.passed = bool(passed)
        self.measured = measured
        self.tolerance = tolerance
        self.comparison = comparison
        self.detail = detail

    @classmethod
    def from_measurement(cls, check_id, name, measurement):
        return cls(
            check_id,
            name,
            measurement.passed,
            measurement.value,
            measurement.tolerance,
            measurement.comparison,
            measurement.detail,
        )

    @classmethod
    def from_error(cls, check_id, name, error):
        return cls(
            check_id,
            name,
            False,
            detail=f"{type(error).__name__}: {error}",
        )

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def bound_text(self):
        if self.measured is None:
            return ""
        return f"{self.measured:.3e} {self.comparison} {self.tolerance:.1e}"

    def as_dict(self):
        return {
            "check_id": self.check_id,
            "check_name": self.name,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "comparison": self.comparison,
            "detail": self.detail,
        }

    def __str__(self):
        return (
            f"[{self.check_id}:{self.name}] {self.status} "
            f"{self.bound_text()}"
        )
