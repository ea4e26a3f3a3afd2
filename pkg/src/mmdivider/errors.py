"""Exception hierarchy.

Two families matter to callers (and map onto CLI exit codes):
:class:`ValidationError` for bad input, :class:`NumericalError` for
computations that could not complete.
"""


class DividerError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DividerError, ValueError):
    pass


class NumericalError(DividerError, ArithmeticError):
    pass


class InvalidSubstrate(ValidationError):
    """One or more substrate invariants are violated.

    ``violations`` holds every ``(field, reason)`` pair found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{field}: {reason}" for field, reason in self.violations)
        super().__init__(f"invalid substrate: {msg}")

    @property
    def fields(self):
        return [field for field, _ in self.violations]


class InvalidRange(ValidationError):
    pass


class InvalidCount(ValidationError):
    pass


class OutOfValidityRange(ValidationError):
    def __init__(self, width_over_height, lo, hi):
        self.width_over_height = width_over_height
        super().__init__(
            f"w/h = {width_over_height:.6g} outside the closed-form validity window [{lo}, {hi}]"
        )


class Unachievable(ValidationError):
    def __init__(self, target, reason=""):
        self.target = target
        super().__init__(f"impedance {target:.6g} ohm is unachievable{': ' + reason if reason else ''}")


class NonPositiveImpedance(ValidationError):
    pass


class FrequencyMismatch(ValidationError):
    pass


class FrequencyOutOfRange(ValidationError):
    pass


class InfeasibleBounds(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        where = f"line {line}" if line is not None else "document"
        super().__init__(f"{where}: {reason}")


class NoConvergence(NumericalError):
    pass


class SingularConversion(NumericalError):
    pass
