"""Exception hierarchy.

Errors deriving from :class:`InputError` mean the input itself is malformed
(the CLI exits with status 2); every other :class:`DiskPotentialError` is a
domain error (status 1).
"""


class DiskPotentialError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DiskPotentialError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class MalformedSpec(InputError):
    pass


class DimensionMismatch(DiskPotentialError):
    pass


class NotSaturated(DiskPotentialError):
    """The lattice spanned by some vectors is not primitive.

    ``torsion`` holds the non-unit Smith invariants of the quotient.
    """

    def __init__(self, torsion):
        self.torsion = tuple(torsion)
        super().__init__(f"lattice is not saturated; quotient torsion {self.torsion}")


class InconsistentConstraints(DiskPotentialError):
    pass


class MissingParameter(DiskPotentialError):
    pass


class Unbounded(DiskPotentialError):
    pass


class Empty(DiskPotentialError):
    pass


class NotFullDimensional(DiskPotentialError):
    pass


class DegenerateHull(DiskPotentialError):
    pass


class InvalidDimension(DiskPotentialError):
    pass


class MissingVerdict(DiskPotentialError):
    pass


class MissingWeight(DiskPotentialError):
    pass


class UnsupportedShape(DiskPotentialError):
    pass


class UnknownCase(DiskPotentialError):
    pass
