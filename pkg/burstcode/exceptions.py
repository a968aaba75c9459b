"""
Exception hierarchy shared by every burstcode module.

Library code raises these; the management commands and REST views translate
them into exit statuses and error envelopes.
"""


class BurstCodeError(Exception):
    """Base exception for burstcode errors"""
    pass


class InfeasibleParametersError(BurstCodeError):
    """Raised when no code instance exists for the requested (q, t, n)"""
    pass


class AlphabetError(BurstCodeError):
    """Raised when a symbol lies outside the alphabet or alphabets are mixed"""
    pass


class OutOfRangeError(BurstCodeError):
    """Raised when a position, length or packed value is outside its range"""
    pass


class PatternFoundError(BurstCodeError):
    """Raised when a window handed to the compressor contains the pattern"""
    pass


class CapacityError(BurstCodeError):
    """Raised when a value does not fit its fixed-width digit field"""
    pass


class NoCandidateError(BurstCodeError):
    """Raised when no candidate word is consistent with the given tag"""
    pass


class AmbiguousDecodingError(BurstCodeError):
    """Raised when more than one candidate word survives filtering"""
    pass


class MalformedBlockError(BurstCodeError):
    """Raised when a replacement block cannot be parsed"""
    pass


class LocatorError(BurstCodeError):
    """Raised when no segment index satisfies the locator case condition"""
    pass


class SketchFormatError(BurstCodeError):
    """Raised when a serialized sketch field is malformed"""
    pass


class ConfigurationError(BurstCodeError):
    """Raised when a campaign description is invalid"""
    pass


class AlphaSearchExhaustedError(BurstCodeError):
    """Raised when no prime up to alpha_max separates a window"""
    pass


class DecodeError(BurstCodeError):
    """
    Raised by the codec when a received word cannot be decoded.

    Attributes:
        stage: pipeline stage that failed (routing, sketch, locate, window, dense)
    """

    def __init__(self, message: str, stage: str = 'routing'):
        super().__init__(message)
        self.stage = stage
