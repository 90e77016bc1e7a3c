"""Exception hierarchy for meandiv.

Domain errors (bad numeric inputs) all derive from :class:`MeanDivError`
so the CLI can map them to a single exit code.
"""


class MeanDivError(Exception):
    """Base class for all meandiv domain errors."""


class NonPositiveInput(MeanDivError):
    """A density value or mean argument was <= 0 (domain is (0, inf))."""


class AlphaOutOfRange(MeanDivError):
    """alpha outside the closed interval [0, 1]."""


class AlphaOutOfOpenInterval(MeanDivError):
    """alpha outside the open interval (0, 1); abstract means have no limit branch."""


class BetaOutOfRange(MeanDivError):
    """beta_A outside (-1, 1]; beta_A = -1 is an exponent singularity."""


class BadPowerPair(MeanDivError):
    """Power exponents must satisfy r > s for dominance P_r >= P_s."""


class GridTooSmall(MeanDivError):
    """Comparability check needs at least 3 strictly increasing grid points."""


class NotComparable(MeanDivError):
    """The generator pair failed the strict-comparability certificate."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MisalignedSupport(MeanDivError):
    """The two densities do not share support labels and weights."""


class ParseError(MeanDivError):
    """Malformed density file."""


class NonPositiveValue(ParseError):
    """A density file contains a value <= 0 and clamping is disabled."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class DuplicateSupportLabel(ParseError):
    """A density file repeats a support label."""


class BadGridSpec(MeanDivError):
    """Invalid quadrature grid specification."""


class DimensionMismatch(MeanDivError):
    """Simplex points of different dimension."""


class DomainError(MeanDivError):
    """Argument outside the domain of a convex generator or embedding."""
