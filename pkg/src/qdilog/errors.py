"""Exception types shared across the package."""


class QDilogError(Exception):
    """Base class for all qdilog errors."""


class NonUnitLeadingCoefficient(QDilogError):
    """Series inversion requires a leading coefficient of +1 or -1."""


class DimensionMismatch(QDilogError):
    """Dimension vectors are indexed by different vertex sets."""


class AxisMismatch(QDilogError):
    """Operation requires roots of compatible axes."""


class IncompleteOrder(QDilogError):
    """A root order must list every root of its axis exactly once."""


class InvalidOrder(QDilogError):
    """The supplied root order violates the ordering rules."""


class BoxMismatch(QDilogError):
    """Algebra elements live in different truncation boxes."""


class ZeroVectorOperand(QDilogError):
    """The basis relation is only defined for nonzero dimension vectors."""
