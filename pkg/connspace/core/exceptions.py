"""
Domain errors raised by the connspace services.
"""

from typing import Any, Optional, Sequence

from connspace.core.bitset import iter_indexes


class ConnSpaceError(Exception):
    """Base class of every domain error; the CLI maps it to exit code 1."""


class InvalidStructure(ConnSpaceError):
    """A family of subsets fails one of the connectivity structure invariants."""


class MissingEmptySet(InvalidStructure):
    def __init__(self) -> None:
        super().__init__("structure does not contain the empty set")


class NotUnionClosed(InvalidStructure):
    def __init__(self, first: int, second: int, labels: Optional[Sequence[str]] = None):
        self.first = first
        self.second = second
        self.witness = (first, second)
        super().__init__(
            "structure is not closed under overlapping unions: "
            f"{_describe(first, labels)} and {_describe(second, labels)} meet "
            "but their union is missing"
        )


class MissingSingleton(InvalidStructure):
    def __init__(self, point: int, label: Optional[str] = None):
        self.point = point
        super().__init__(f"integral structure is missing the singleton {{{label or point}}}")


class InvalidTopology(InvalidStructure):
    """A family of open sets that is not a topology."""


class SizeLimitExceeded(ConnSpaceError):
    """An explicit guard refused a computation that would blow up."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what} of size {size} exceeds the configured limit {limit}")


class FamilySizeLimitExceeded(SizeLimitExceeded):
    pass


class HomTooLarge(SizeLimitExceeded):
    pass


class SearchTooLarge(SizeLimitExceeded):
    pass


class GroundMismatch(ConnSpaceError):
    pass


class NotIntegral(ConnSpaceError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} requires an integral space")


class NotConnected(ConnSpaceError):
    pass


class NotAMorphism(ConnSpaceError):
    """A map fails to send some connected set onto a connected set."""

    def __init__(self, message: str, witness: Optional[int] = None):
        self.witness = witness
        super().__init__(message)


class NotRealizable(ConnSpaceError):
    """A DAG is not the generic graph of any finite integral space."""

    def __init__(self, reason: str, witness: Any = None):
        self.witness = witness
        super().__init__(f"graph is not realizable: {reason}")


class NoIndexForEmptySpace(ConnSpaceError):
    def __init__(self) -> None:
        super().__init__("the connectivity index is undefined for the empty space")


class NotIrreducible(ConnSpaceError):
    pass


class InvalidPoint(ConnSpaceError):
    pass


class InvalidPartition(ConnSpaceError):
    pass


class InvalidEdge(ConnSpaceError):
    pass


class InvalidParameter(ConnSpaceError, ValueError):
    """A size or threshold outside the range a catalog family accepts."""


class ParseError(ConnSpaceError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownLabel(ConnSpaceError):
    def __init__(self, label: str, line: Optional[int] = None):
        self.label = label
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown point label '{label}'{where}")


def _describe(mask: int, labels: Optional[Sequence[str]]) -> str:
    points = [labels[idx] if labels else str(idx) for idx in iter_indexes(mask)]
    return "{" + " ".join(points) + "}"
