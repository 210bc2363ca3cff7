"""Exception hierarchy shared across the package."""


class FinshiftError(Exception):
    """Base class for every domain error raised by this package."""


class NotATopology(FinshiftError):
    """The input does not describe a topology.

    Raised for open-set families that miss the empty/full set or are not
    closed under pairwise union/intersection (the violating pair of sets
    is named in the message and kept in ``sets``), and for preorder
    matrices that fail reflexivity or transitivity.
    """

    def __init__(self, message, sets=None):
        super().__init__(message)
        self.sets = sets


class UnknownPoint(FinshiftError):
    def __init__(self, point):
        super().__init__(f"unknown point {point!r}")
        self.point = point


class CapExceeded(FinshiftError):
    """An enumeration was requested beyond its hard size cap."""


class SpaceTooSmall(FinshiftError):
    """Chaos analysis needs at least two points."""


class NotChaotic(FinshiftError):
    """A scrambled witness was requested for a non-chaotic space."""


class DuplicateParameters(FinshiftError):
    """Two witness parameters coincide as functions."""


class UnsupportedCombination(FinshiftError):
    """classify_pair/closeness_indicator got a pair of sequence forms it
    cannot certify symbolically."""


class WitnessRequiresNonClosePair(FinshiftError):
    """Witness sequences are only meaningful over a pair of points with
    disjoint closures; the certificate logic is unsound otherwise."""


class IndexOutOfRange(FinshiftError):
    """A map was applied outside its index set."""


class UndecidedWithinBudget(FinshiftError):
    """Quasi-periodicity iteration hit the step cap.

    Unreachable for the supported map presentations unless override
    values are astronomically large; seeing this is a bug signal.
    """


class ParseError(FinshiftError):
    """Syntax error in a text input (topology file, map file, sequence
    literal).  Carries a 1-based line and/or column when known."""

    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc += f"line {line}: "
        if col is not None:
            loc += f"column {col}: "
        super().__init__(loc + message)
        self.line = line
        self.col = col
