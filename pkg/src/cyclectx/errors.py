"""Exception hierarchy shared by all modules."""


class ContextualityError(Exception):
    """Base class for every error raised by cyclectx."""


class DimensionMismatchError(ContextualityError, ValueError):
    pass


class NotHermitianError(ContextualityError, ValueError):
    pass


class NotDichotomousError(ContextualityError, ValueError):
    pass


class InvalidStateError(ContextualityError, ValueError):
    pass


class EigensolverError(ContextualityError, ArithmeticError):
    pass


class IncompatibleObservablesError(ContextualityError, ValueError):
    """Two observables that must commute do not.

    ``pair`` holds the offending 1-based indices, matching the labels used in
    scenario files and reports.
    """

    def __init__(self, pair, residual, message=None):
        self.pair = tuple(pair)
        self.residual = float(residual)
        if message is None:
            message = (f"observables {self.pair[0]} and {self.pair[1]} do not commute "
                       f"(commutator residual {self.residual:.3g})")
        super().__init__(message)


class ScenarioError(ContextualityError, ValueError):
    pass


class UnsupportedSignPatternError(ContextualityError, ValueError):
    pass


class EnumerationLimitError(ContextualityError, ValueError):
    pass


class InconsistentDataError(ContextualityError, ValueError):
    pass


class ScenarioFileError(ContextualityError, ValueError):
    """Schema violation in a scenario file; ``field`` names the offending path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
