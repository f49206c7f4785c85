"""Exception types shared across the package."""


class LatfitError(Exception):
    """Base class for every error raised by latfit."""


class SingularMatrix(LatfitError):
    """Determinant below the scale-aware singularity threshold."""


class RankDeficient(LatfitError):
    """Design matrix has fewer independent columns than unknowns."""


class DependentRows(LatfitError):
    """Basis rows are (numerically) linearly dependent."""


class DegenerateInput(LatfitError):
    """Input violates a structural precondition (too few points, flat set, ...)."""


class NoCandidate(LatfitError):
    """No transform row yields a usable integer candidate."""


class NoInvertibleBlock(LatfitError):
    """No invertible integer block could be selected from the transform."""


class PrecisionLoss(LatfitError):
    """Working precision was insufficient to certify the result."""


class ParseError(LatfitError):
    """Malformed input data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatch(LatfitError):
    """Dimensions of related objects disagree."""
