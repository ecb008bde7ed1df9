"""Exception types shared across the package."""


class CharsplineError(Exception):
    """Base class for all domain errors raised by this package."""


class PoleError(CharsplineError):
    """Evaluation requested at a pole of a rational function."""


class MultiplePoleError(CharsplineError):
    """Residue requested at a pole of multiplicity >= 2."""


class NotRegularAtInfinity(CharsplineError):
    """Value at infinity requested for a function with numerator degree
    exceeding denominator degree."""


class NotInSpace(CharsplineError):
    """A function handed to the basis expansion has a pole off the grid."""


class DegenerateInput(CharsplineError):
    """Repeated evaluation points, or points colliding with a removable
    normalization node, where distinctness is required."""


class RankDeficient(CharsplineError):
    """The deterministic sample schedule failed to produce a full-rank
    system after the allowed number of resampling rounds."""


class NormalizationMismatch(CharsplineError):
    """A computed row does not sum to 1; usually signals the wrong
    normalization convention for the index product."""
