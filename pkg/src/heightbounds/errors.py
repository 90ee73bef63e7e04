"""Exception hierarchy shared by every layer of the package."""


class HeightBoundsError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HeightBoundsError):
    """Malformed input: parse errors, unknown names, shape mismatches."""


class PolySyntaxError(InputError):
    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(InputError):
    pass


class FieldMismatch(InputError):
    pass


class RingMismatch(InputError):
    pass


class DuplicateVariable(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NonProperIdeal(InputError):
    pass


class ConfigError(InputError):
    pass


class ResourceLimit(HeightBoundsError):
    """A configured cap (pairs, basis size, degree, minor size, ...) was hit."""


class ExponentOverflow(ResourceLimit):
    pass


class HypothesisViolated(HeightBoundsError):
    """A theorem hypothesis was checked and found false.

    ``report`` carries the partially filled BoundReport when one exists.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class XNotInMN(HypothesisViolated):
    pass


class WitnessNotContaining(HypothesisViolated):
    pass
