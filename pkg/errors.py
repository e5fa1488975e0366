"""Exception hierarchy shared by every module.

The CLI maps ``ConfigError`` to exit code 2 and every other ``CayleyError``
to exit code 1.
"""


class CayleyError(Exception):
    """Base class for all library errors."""


class ConfigError(CayleyError):
    pass


# automata


class AutomatonError(CayleyError):
    pass


class AlphabetMismatchError(AutomatonError):
    pass


class MalformedConvolutionError(AutomatonError):
    pass


class ArityMismatchError(AutomatonError):
    pass


class AutomatonMismatchError(AutomatonError):
    pass


class InvalidTapeIndexError(AutomatonError):
    pass


class NotBoundedError(AutomatonError):
    pass


class FormatError(AutomatonError):
    pass


class DomainError(CayleyError):
    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class FunctionalityError(CayleyError):
    pass


# presentations


class PresentationError(CayleyError):
    pass


class InvalidPresentationError(PresentationError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# oracles


class OracleError(CayleyError):
    pass


class UnsupportedGroupError(OracleError):
    pass


class WrongOracleError(OracleError):
    pass


class UnknownLengthError(OracleError):
    pass


# characteristics


class CharacteristicsError(CayleyError):
    pass


class EmptySetError(CharacteristicsError):
    pass


class FolnerNotFoundError(CharacteristicsError):
    pass


class BudgetExceededError(CharacteristicsError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


# series


class SeriesError(CayleyError):
    pass


class InsufficientDataError(SeriesError):
    pass


class NonPositiveValueError(SeriesError):
    pass
