"""Exceptions and warnings raised by magtrans.

Every exception derives from :class:`TransducerError` and carries an
``exit_code`` that the command line interface returns when the error
escapes a command.

"""

__all__ = [
    "TransducerError",
    "ConfigError",
    "UnitError",
    "UnknownKeyError",
    "RangeViolationError",
    "MissingBlockError",
    "ParameterError",
    "NumericalError",
    "SingularSystemError",
    "StokesInstabilityError",
    "OutOfBandError",
    "FitError",
    "ConvergenceError",
    "DegenerateDataError",
    "UnderSpannedError",
    "BranchExtractionError",
    "ArtifactError",
    "UnimodalityWarning",
    "BoundaryWarning",
]


class TransducerError(Exception):
    """Base class for all magtrans errors."""

    exit_code = 1


class ConfigError(TransducerError, ValueError):
    """Invalid configuration document.

    Parameters
    ----------
    message : str
        Description of the problem.
    key : str, optional
        Offending key, as ``section.key``.
    line : int, optional
        1-based line of the offending key in the document.

    """

    exit_code = 2

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append("key '{}'".format(key))
        if line is not None:
            where.append("line {}".format(line))
        if where:
            message = "{} ({})".format(message, ", ".join(where))
        super().__init__(message)


class UnitError(ConfigError):
    """Dimensioned value without a recognized unit suffix."""


class UnknownKeyError(ConfigError):
    """Section or key not present in the schema."""


class RangeViolationError(ConfigError):
    """Value outside of its allowed range."""


class MissingBlockError(ConfigError):
    """Required section or key is absent."""


class ParameterError(TransducerError, ValueError):
    """Physical parameters violate an invariant."""

    exit_code = 3


class NumericalError(TransducerError, ArithmeticError):
    """Numerical evaluation cannot produce a trustworthy result."""

    exit_code = 4


class SingularSystemError(NumericalError):
    """Coefficient matrix is numerically rank-deficient."""


class StokesInstabilityError(NumericalError):
    """Stokes denominator is close to the parametric threshold."""


class OutOfBandError(TransducerError, ValueError):
    """Target frequency is not reachable within the field interval."""

    exit_code = 5


class FitError(TransducerError, RuntimeError):
    """Base class for fitting failures."""

    exit_code = 6


class ConvergenceError(FitError):
    """Optimizer stopped before meeting its tolerance."""


class DegenerateDataError(FitError):
    """Data carry no resolvable feature."""


class UnderSpannedError(FitError):
    """Trace does not extend far enough beyond the resonance."""


class BranchExtractionError(FitError):
    """Polariton branches could not be extracted from a map."""


class ArtifactError(TransducerError, OSError):
    """Output artifact could not be written or read back."""

    exit_code = 7


class UnimodalityWarning(UserWarning):
    """Scanned curve has more than one local maximum."""


class BoundaryWarning(UserWarning):
    """Optimum lies on a bound of the search region."""
