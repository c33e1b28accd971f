"""Exception hierarchy.

Scenario-file problems and computation-time failures are kept on separate
branches because the CLI maps them to different exit statuses (2 and 3).
"""

from __future__ import annotations


class EconofilmError(Exception):
    """Base class for every failure raised by this package."""


class InvalidInputError(EconofilmError, ValueError):
    """An argument violates an operation's numeric domain."""


class DegenerateDenominatorError(InvalidInputError):
    """The accommodation formula's denominator is zero."""


class OutOfRangeError(EconofilmError, ValueError):
    """A lookup temperature falls outside the tabulated span (no extrapolation)."""


class NumericalError(EconofilmError):
    """A computation cannot produce a meaningful result."""


class NoInformationError(NumericalError):
    """The coupling matrix is identically zero; source masses are unrecoverable."""


class UnderDeterminedError(NumericalError):
    """Too few independent observations to calibrate the named rows."""

    def __init__(self, deficient_rows, message=None):
        self.deficient_rows = tuple(deficient_rows)
        if message is None:
            rows = ", ".join(str(r) for r in self.deficient_rows)
            message = f"under-determined calibration for rows: {rows}"
        super().__init__(message)


class ScenarioError(EconofilmError):
    """Base class for scenario-file problems."""


class ScenarioParseError(ScenarioError):
    """The scenario file is not valid JSON."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ScenarioValidationError(ScenarioError):
    """The scenario parsed but violates the schema or a type invariant.

    Carries every violation found, not just the first.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class DanglingReferenceError(ScenarioValidationError):
    """A cross-reference names an id that is not defined in the scenario."""

    def __init__(self, missing, violations=None):
        self.missing = tuple(missing)
        if violations is None:
            violations = [f"dangling reference: {name}" for name in self.missing]
        super().__init__(violations)
