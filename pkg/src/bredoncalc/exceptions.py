"""Custom exceptions for bredoncalc."""


class BredonCalcError(Exception):
    """Base exception for all bredoncalc errors."""

    pass


class ValidationError(BredonCalcError):
    """Raised when input validation fails."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ParameterError(ValidationError):
    """Raised when a group parameter is invalid or two inputs disagree on it.

    Covers p that is not an odd prime, elements of different dihedral groups,
    Burnside elements at different levels and out-of-range γ-indices.
    """

    pass


class DegreeParseError(ValidationError):
    """Raised when an RO-degree string cannot be parsed."""

    def __init__(self, text: str, message: str):
        self.text = text
        super().__init__("degree", f"{message} in {text!r}")


class ChainComplexError(BredonCalcError):
    """Raised when a chain complex is malformed, e.g. d∘d ≠ 0."""

    def __init__(self, degree: int, message: str):
        self.degree = degree
        super().__init__(f"degree {degree}: {message}")


class NoChainModelError(BredonCalcError):
    """Raised when a chain model is requested for a degree that has none.

    Only ℓ ≥ 0 and m ≥ 0 have cellular models; negative multiplicities are
    served by duality and the spectral sequence.
    """

    def __init__(self, degree: str):
        self.degree = degree
        super().__init__(f"no chain model for {degree}")


class MackeyAxiomError(BredonCalcError):
    """Raised when a constructed Mackey functor violates an axiom it must satisfy."""

    def __init__(self, functor: str, violations: tuple[str, ...]):
        self.functor = functor
        self.violations = violations
        super().__init__(f"{functor}: {'; '.join(violations)}")


class SpectralSequenceError(BredonCalcError):
    """Raised when a spectral page is malformed or cannot be assembled."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        self.position = position
        where = f" at {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
