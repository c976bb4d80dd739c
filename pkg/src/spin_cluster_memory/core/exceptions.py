"""
Exception hierarchy shared by every module.

All errors derive from ValueError so callers that only know about invalid
input keep working; the CLI maps them to exit code 2.
"""

from typing import Iterable, Optional


class SpinMemoryError(ValueError):
    """Base class for invalid input or unrecoverable numerical state."""


class DenseLimitError(SpinMemoryError):
    def __init__(self, n: int, limit: int):
        super().__init__(
            f"{n} spins exceeds the dense simulation limit of {limit} "
            f"(matrices would be {2 ** n}x{2 ** n}); reduce --spins"
        )
        self.n = n
        self.limit = limit


class CouplingMatrixError(SpinMemoryError):
    pass


class OperatorIndexError(SpinMemoryError):
    pass


class HermiticityError(SpinMemoryError):
    pass


class PulseError(SpinMemoryError):
    pass


class DimensionMismatchError(SpinMemoryError):
    pass


class AcquisitionError(SpinMemoryError):
    pass


class SpectrumError(SpinMemoryError):
    pass


class CalibrationError(SpinMemoryError):
    """Reference peaks too weak to define a phase."""

    def __init__(self, message: str, offsets: Optional[Iterable[float]] = None):
        super().__init__(message)
        self.offsets = list(offsets or [])


class CodecError(SpinMemoryError):
    pass


class DecodeError(CodecError):
    def __init__(self, group: int, value: int):
        super().__init__(
            f"5-bit group {group} has value {value}; only 0-26 are defined"
        )
        self.group = group
        self.value = value


class SizeMismatchError(SpinMemoryError):
    pass


class FileFormatError(SpinMemoryError):
    pass
