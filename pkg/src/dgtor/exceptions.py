"""Exception hierarchy shared by every layer of the engine."""


class DgTorError(Exception):
    """Base class for all errors raised by :mod:`dgtor`."""


class CompositionNotZero(DgTorError):
    """Two consecutive differentials do not compose to zero."""


class NotACycle(DgTorError):
    """A vector passed as a cycle is not annihilated by the outgoing differential."""


class CutoffMismatch(DgTorError):
    pass


class CutoffTooSmall(DgTorError):
    """A result below the cutoff would depend on data above it."""


class CutoffTooLarge(DgTorError):
    """The requested window exceeds a resource guard."""


class DegreeMismatch(DgTorError):
    pass


class NotAChainMap(DgTorError):
    pass


class NotOneConnected(DgTorError):
    pass


class NotCocomplete(DgTorError):
    pass


class NotCommutative(DgTorError):
    pass


class InvalidHomotopy(DgTorError):
    pass


class InvalidTwistingCochain(DgTorError):
    pass


class EndpointMismatch(DgTorError):
    pass


class SourceNotCobar(DgTorError):
    pass


class SquaresDoNotCommute(DgTorError):
    pass


class OddGeneratorInBase(DgTorError):
    pass


class ParseError(DgTorError):
    """Malformed input text. ``diagnostics`` holds ``(line, message)`` pairs."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class ValidationError(DgTorError):
    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class ResourceGuardExceeded(CutoffTooLarge):
    """More basis elements would be enumerated than ``DGTOR_MAX_CELLS`` allows."""
