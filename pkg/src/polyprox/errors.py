"""Exception types shared across the package."""

from __future__ import annotations


class PolyproxError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PolyproxError):
    """A graph violates a structural invariant."""


class SelfLoopError(ValidationError):
    def __init__(self, node_id: str, line: int | None = None):
        self.node_id = node_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"self-loop on node {node_id!r}{where}")


class CycleError(ValidationError):
    """The edge set contains a directed cycle; ``path`` is a witness."""

    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("cycle detected: " + " -> ".join(self.path))


class DuplicateIdError(ValidationError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"conflicting person records for id {node_id!r}")


class UnknownNodeError(ValidationError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"unknown node id {node_id!r}")


class EmptyGraphError(PolyproxError):
    pass


class EmptyMaskError(PolyproxError):
    pass


class EmptyInputError(PolyproxError):
    pass


class ZeroExponentError(PolyproxError):
    def __init__(self) -> None:
        super().__init__("exponent h must be nonzero")


class InvalidDegreeError(PolyproxError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"generation degree must be >= 1, got {n}")


class ParseError(PolyproxError):
    """A file or page could not be parsed; carries source location if known."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        prefix = ""
        if source is not None:
            prefix = f"{source}: "
            if line is not None:
                prefix = f"{source}, line {line}: "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)


class TooLargeError(PolyproxError):
    pass


class NotFoundError(PolyproxError):
    def __init__(self, pid: str):
        self.pid = pid
        super().__init__(f"no page found for pid {pid!r}")


class NetworkError(PolyproxError):
    pass
