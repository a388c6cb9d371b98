"""Exception types shared across the package."""


class PeakcutError(Exception):
    """Base class for all data/contract errors raised by this package."""


class UnknownFormat(PeakcutError):
    pass


class MalformedStream(PeakcutError):
    """Raised when the malformed-line fraction of a log stream exceeds the abort threshold."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class AssetMismatch(PeakcutError):
    pass


class EmptyBase(PeakcutError):
    pass


class BadBinning(PeakcutError):
    pass


class EmptySeries(PeakcutError):
    pass


class UnsortedInput(PeakcutError):
    pass


class EmptyShotTrack(PeakcutError):
    pass


class ExprParseError(PeakcutError):
    """Tag expression syntax error; `position` is the character offset in the source."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EventOutOfRange(PeakcutError):
    pass


class OverlappingSegments(PeakcutError):
    pass


class EmptyReel(PeakcutError):
    pass


class UnknownSource(PeakcutError):
    pass


class MethodMissing(PeakcutError):
    pass


class BadConfig(PeakcutError):
    pass
