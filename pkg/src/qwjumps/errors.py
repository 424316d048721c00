"""Exception types shared across the package."""

from __future__ import annotations


class QwjumpsError(Exception):
    """Base class for all package-specific errors."""


class DegenerateSequenceError(QwjumpsError):
    """Raised when a diagnostic is undefined for a constant sequence.

    A zero-variance symbol sequence has no meaningful power spectrum or
    autocorrelation; callers must handle this case explicitly instead of
    receiving a silently ill-defined result.
    """


class BoundaryContactError(QwjumpsError):
    """Raised when amplitude would be shifted off the edge of the lattice.

    The evolution routines size the lattice so that this cannot happen for
    any walk started at the origin, so seeing this error means the caller
    supplied a state too close to the array boundary for the requested jump.
    """


class DegenerateFitError(QwjumpsError):
    """Raised when a power-law fit is attempted on unusable data.

    Typical causes: a fit window containing fewer than two points, or
    non-positive variance samples that cannot be log-transformed.
    """
