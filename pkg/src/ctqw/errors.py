"""Shared exception types."""

import math


class CtqwError(Exception):
    """Base class for all package errors."""


class GraphError(CtqwError):
    """Invalid graph construction (self-loop, duplicate edge, bad weight)."""


class BoundStateResonanceError(CtqwError):
    """(2 cos k - D) is singular at the requested momentum."""

    def __init__(self, k, eigenvalue):
        self.k = k
        self.eigenvalue = eigenvalue
        super().__init__(
            f"2cos(k)={2 * math.cos(k):.6g} hits internal eigenvalue "
            f"{eigenvalue:.6g} at k={k:.6g}"
        )


class SingularQMatrixError(CtqwError):
    """Q(k) is not invertible at the requested momentum."""


class UndefinedLengthError(CtqwError):
    """S-matrix element too small for a well-defined effective length."""


class PhaseUndefinedError(CtqwError):
    """State/reference overlap below the threshold for phase extraction."""


class CapacityError(CtqwError):
    """Requested simulation exceeds the configured basis-size budget."""


class ValidationError(CtqwError):
    """Malformed input file or parameter outside its contract."""


class PropagationError(CtqwError):
    """Propagator failed to meet the requested tolerance."""


class DesyncError(CtqwError):
    """Compiled layout failed the rail synchronization invariant."""
