"""Quantum walks driven by binary aperiodic jump-control sequences.

The package covers the full pipeline: sequence generation, sequence
diagnostics, unitary and classical evolution, wavepacket observables,
and a deterministic batch command line.
"""

from .errors import (
    BoundaryContactError,
    DegenerateFitError,
    DegenerateSequenceError,
    QwjumpsError,
)
from .sequences import BinarySequence, Protocol, generate, to_jumps
from .series import ObservableSeries
from .walk_engine import (
    ClassicalProfile,
    ClassicalResult,
    CoinFamily,
    CoinSpec,
    EvolutionResult,
    RunConfig,
    SpinorField,
    classical_evolve,
    classical_step,
    evolve,
    initial_state,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BinarySequence",
    "BoundaryContactError",
    "ClassicalProfile",
    "ClassicalResult",
    "CoinFamily",
    "CoinSpec",
    "DegenerateFitError",
    "DegenerateSequenceError",
    "EvolutionResult",
    "ObservableSeries",
    "Protocol",
    "QwjumpsError",
    "RunConfig",
    "SpinorField",
    "classical_evolve",
    "classical_step",
    "evolve",
    "generate",
    "initial_state",
    "step",
    "to_jumps",
    "__version__",
]
