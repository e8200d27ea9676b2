"""Exceptions raised by nsdwav.

Data and precondition problems derive from :class:`ValueError`, broken internal
invariants from :class:`RuntimeError`, so callers can catch the built-in type.
"""


class NsdwavError(Exception):
    """Base class of every nsdwav error"""


class ConfigError(NsdwavError, ValueError):
    """Invalid configuration or usage (CLI exit status 1)"""

    def __init__(self, message: str, line: int = None, field: str = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{', '.join(location)}: {message}"
        super().__init__(message)


class DataError(NsdwavError, ValueError):
    """Malformed input data (CLI exit status 2)"""


class InvariantViolation(NsdwavError, RuntimeError):
    """An internal invariant does not hold (CLI exit status 3)"""


class UnsupportedOrder(ConfigError):
    """No tabulated filter for the requested (family, order) pair"""


class LevelOutOfRange(NsdwavError, ValueError):
    """A resolution level lies outside [0, log2 n]"""


class SignalTooShort(DataError):
    """The signal is too short for the requested operation"""


class BlockOutOfRange(NsdwavError, ValueError):
    """A block index or block range lies outside its resolution level"""


class OddLengthForPairModel(NsdwavError, ValueError):
    """Pair noise models need an even number of samples"""


class InvalidRho(ConfigError):
    """The within-pair correlation must satisfy -1 < rho0 < 0"""


class InsufficientLength(NsdwavError, ValueError):
    """The sequence is too short for the requested lag range"""


class LengthMismatch(DataError):
    """Two sequences that must have equal length do not"""


class ConstantSignal(DataError):
    """A constant signal has no standard deviation to calibrate against"""
