"""
Exception hierarchy shared by every app.

SpecError covers bad inputs (CLI exit code 2); NumericalGuardError covers
numeric guards and enumeration limits (CLI exit code 3).
"""


class PacLabError(Exception):
    """Root of all lab errors."""

    exit_code = 1


class SpecError(PacLabError, ValueError):
    exit_code = 2


class DimensionMismatch(SpecError):
    pass


class UnknownInstance(SpecError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidState(SpecError):
    pass


class InvalidDistribution(SpecError):
    pass


class PreconditionViolation(SpecError):
    pass


class UnsupportedRegime(SpecError):
    pass


class NumericalGuardError(PacLabError, ArithmeticError):
    exit_code = 3


class IndistinguishableStates(NumericalGuardError):
    pass


class DegenerateNoise(NumericalGuardError):
    pass


class EnumerationLimitExceeded(NumericalGuardError):
    pass
