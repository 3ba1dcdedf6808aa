"""Exception hierarchy for the far-paths engine.

Every error raised on purpose by the engine derives from ``FarPathsError`` so
the command line can turn it into a one-line diagnostic and exit code 2.
"""

from typing import Optional


class FarPathsError(Exception):
    """Base exception for the far-paths engine."""


# ---------------------------------------------------------------------------
# Embedding and input validation
# ---------------------------------------------------------------------------


class EmbeddingError(FarPathsError):
    """The drawing or the terminal data is not a valid embedded instance."""


class EulerViolation(EmbeddingError):
    """Face tracing does not satisfy Euler's formula."""


class TerminalNotOnOuterFace(EmbeddingError):
    """A terminal vertex is not incident with the outer face."""


class DuplicateEdge(EmbeddingError):
    """Two edges share the same endpoints, or an edge id repeats."""


class LoopEdge(EmbeddingError):
    """An edge joins a vertex to itself."""


class RotationMismatch(EmbeddingError):
    """A rotation lists an edge that is not incident with its vertex."""


class UnknownEdge(EmbeddingError):
    """An edge id does not exist in the graph."""


class DisconnectedGraph(EmbeddingError):
    """The operation needs a connected graph."""


class EmptySet(EmbeddingError):
    """A vertex set argument is empty."""


class EmptyTerminalSide(EmbeddingError):
    """S or T is empty."""


class NotInternallyDisjoint(EmbeddingError):
    """Two intervals share an internal point."""


class IdenticalIntervals(EmbeddingError):
    """An operation needs two distinct intervals."""


class BoundaryOrderError(EmbeddingError):
    """The boundary order does not follow the outer walk."""


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


class SolverError(FarPathsError):
    """Raised by the solvers."""


class InvalidDemand(SolverError):
    """The demand function has positive values on a crossing quadruple."""


class CrossingPairs(SolverError):
    """Two terminal pairs cross on the bounding curve."""


class InternalInconsistency(SolverError):
    """A state the theory rules out was reached."""


class BoundViolation(InternalInconsistency):
    """A certificate exceeds a guaranteed bound."""


class HypothesisViolated(SolverError):
    """A subroutine was called without its precondition."""


class NoGapPath(SolverError):
    """No path runs along the boundary between two consecutive intervals."""


class CapExceeded(FarPathsError):
    """The brute-force oracle hit its enumeration cap."""


class InstanceFormatError(FarPathsError):
    """An instance, certificate or demand file failed to parse."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"
