"""Exception types shared across the package."""


class QclError(Exception):
    """Base class for all package-specific errors."""


class NonHermitianInput(QclError):
    """An operator that must be Hermitian failed the Hermiticity check."""


class ConvergenceFailure(QclError):
    """The iterative eigensolver exhausted its sweep budget."""


class DimensionMismatch(QclError):
    """Operator/state dimensions do not agree."""


class DimensionOverflow(QclError):
    """A Kronecker product would exceed the configured dense-matrix cap."""


class SiteOutOfRange(QclError):
    """Qubit index outside 1..n_qubits."""


class ParamLengthMismatch(QclError):
    """Parameter vector length differs from 3 * depth * n_qubits."""


class ObjectiveNonFinite(QclError):
    """The optimizer objective returned NaN or Inf."""


class ResolutionInsufficient(QclError):
    """DFT sampling parameters cannot separate the exact frequency set."""


class DegenerateSpectrum(QclError):
    """Spacing-based statistic undefined because of (near-)degenerate levels.

    Carries ``collisions``: the number of spacings below tolerance.
    """

    def __init__(self, message, collisions=0):
        super().__init__(message)
        self.collisions = collisions


class InsufficientHorizon(QclError):
    """Time-average horizon too short relative to the slowest beat period."""


class EmptyWindow(QclError):
    """Microcanonical energy window contains no eigenstate."""


class ConfigError(QclError):
    """Experiment configuration failed schema validation."""


class DegeneracyWarning(UserWarning):
    """Premise of an analytic formula (non-degeneracy) is not met."""
