"""Two-level continuous-time quantum walkers on directed weighted graphs.

A numerical library and CLI for universal quantum computation carried by
quantum walkers with an internal two-level color: analytic graph scattering,
microscopic wave-packet dynamics, the primitive gate library (roundabouts,
encoder/decoder, color rotations, CP, CNOT) and a compiler lowering gate
circuits to physical block layouts, with cross-validation between the
analytic and microscopic models.
"""

from . import dynamics, gates, graph, single_scattering, two_particle
from .errors import (
    BoundStateResonanceError,
    CapacityError,
    CtqwError,
    DesyncError,
    GraphError,
    PhaseUndefinedError,
    PropagationError,
    SingularQMatrixError,
    UndefinedLengthError,
    ValidationError,
)

__version__ = "0.1.0"
