"""Exception types raised across frameforge."""


class FrameforgeError(Exception):
    """Base class for all frameforge errors."""


class NonSmoothAtPoint(FrameforgeError, ValueError):
    pass


class NonSmoothFamily(FrameforgeError, ValueError):
    pass


class NotNormalizable(FrameforgeError, ValueError):
    pass


class DimTooLarge(FrameforgeError, ValueError):
    pass


class DimMismatch(FrameforgeError, ValueError):
    pass


class NaNEncountered(FrameforgeError, FloatingPointError):
    pass


class UnstableCertificate(FrameforgeError):
    """Decay sup ratio kept growing when the sample radius was doubled."""


class TooFewValidSamples(FrameforgeError):
    pass


class TooManyPoints(FrameforgeError, ValueError):
    pass


class EmptyDictionary(FrameforgeError, ValueError):
    pass


class GramSingular(FrameforgeError, ArithmeticError):
    pass


class DictionaryExhausted(FrameforgeError, ValueError):
    pass


class MissingBound(FrameforgeError, ValueError):
    pass


class EmptyExpansion(FrameforgeError, ValueError):
    pass


class FitSingular(FrameforgeError, ArithmeticError):
    pass


class NotSeparable(FrameforgeError, ValueError):
    pass


class SchemaMismatch(FrameforgeError, ValueError):
    pass


class MissingNodes(FrameforgeError, ValueError):
    pass


class ConfigError(FrameforgeError, ValueError):
    """Invalid experiment configuration; the message names the field."""
