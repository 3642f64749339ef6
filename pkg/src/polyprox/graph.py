"""Polytree: a validated, immutable DAG with edges oriented parent -> child."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    CycleError,
    DuplicateIdError,
    SelfLoopError,
    UnknownNodeError,
    ValidationError,
)

logger = logging.getLogger(__name__)

Edge = tuple[str, str]


@dataclass(frozen=True)
class Person:
    """A vertex: stable external identifier plus a display name (may be empty)."""

    id: str
    name: str = ""


def _coerce_person(item) -> Person:
    if isinstance(item, Person):
        return item
    if isinstance(item, str):
        return Person(item)
    pid, name = item
    return Person(pid, name)


class Polytree:
    """Directed acyclic graph of Person vertices.

    Construction validates everything up front: ids are non-empty and unique,
    edges are deduplicated, self-loops are rejected, and acyclicity is checked
    with an explicit witness path in the error. Instances are immutable, so
    any number of concurrent readers is safe.

    ``persons`` accepts Person objects, ``(id, name)`` pairs, or bare id
    strings. Edge endpoints that are not listed as persons are auto-registered
    with an empty name unless ``strict`` is true.
    """

    __slots__ = ("_names", "_children", "_parents", "_edges")

    def __init__(
        self,
        persons: Iterable = (),
        edges: Iterable[Edge] = (),
        *,
        strict: bool = False,
    ):
        names: dict[str, str] = {}
        for item in persons:
            person = _coerce_person(item)
            if not person.id:
                raise ValidationError("empty node id")
            known = names.get(person.id)
            if known is None:
                names[person.id] = person.name
            elif known != person.name:
                raise DuplicateIdError(person.id)

        edge_set: set[Edge] = set()
        for parent, child in edges:
            if not parent or not child:
                raise ValidationError("empty node id in edge")
            if parent == child:
                raise SelfLoopError(parent)
            for endpoint in (parent, child):
                if endpoint not in names:
                    if strict:
                        raise UnknownNodeError(endpoint)
                    names[endpoint] = ""
            edge_set.add((parent, child))

        self._names = dict(sorted(names.items()))
        self._edges: tuple[Edge, ...] = tuple(sorted(edge_set))

        children: dict[str, list[str]] = {pid: [] for pid in self._names}
        parents: dict[str, list[str]] = {pid: [] for pid in self._names}
        for parent, child in self._edges:
            children[parent].append(child)
            parents[child].append(parent)
        self._children = {pid: tuple(v) for pid, v in children.items()}
        self._parents = {pid: tuple(v) for pid, v in parents.items()}

        self._check_acyclic()

    def _check_acyclic(self) -> None:
        indegree = {pid: len(self._parents[pid]) for pid in self._names}
        ready = deque(pid for pid, deg in indegree.items() if deg == 0)
        seen = 0
        while ready:
            pid = ready.popleft()
            seen += 1
            for child in self._children[pid]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    ready.append(child)
        if seen != len(self._names):
            remaining = {pid for pid, deg in indegree.items() if deg > 0}
            raise CycleError(self._find_cycle(remaining))

    def _find_cycle(self, remaining: set[str]) -> list[str]:
        # Every remaining node lies on or leads into a cycle; walk until repeat.
        start = min(remaining)
        path = [start]
        on_path = {start: 0}
        cur = start
        while True:
            cur = next(c for c in self._children[cur] if c in remaining)
            if cur in on_path:
                return path[on_path[cur]:] + [cur]
            on_path[cur] = len(path)
            path.append(cur)

    # -- read API ----------------------------------------------------------

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(self._names)

    @property
    def names(self) -> Mapping[str, str]:
        return MappingProxyType(self._names)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def persons(self) -> Iterator[Person]:
        for pid, name in self._names.items():
            yield Person(pid, name)

    def name(self, pid: str) -> str:
        self.require(pid)
        return self._names[pid]

    def children(self, pid: str) -> tuple[str, ...]:
        self.require(pid)
        return self._children[pid]

    def parents(self, pid: str) -> tuple[str, ...]:
        self.require(pid)
        return self._parents[pid]

    def require(self, pid: str) -> None:
        if pid not in self._names:
            raise UnknownNodeError(pid)

    def __contains__(self, pid: object) -> bool:
        return pid in self._names

    def __len__(self) -> int:
        return len(self._names)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polytree):
            return NotImplemented
        return self._names == other._names and self._edges == other._edges

    __hash__ = None  # mutable-looking equality; not hashable

    def __repr__(self) -> str:
        return f"Polytree({len(self)} nodes, {self.num_edges} edges)"

    def reverse(self) -> "Polytree":
        """The same graph with every edge flipped."""
        return Polytree(self.persons(), [(c, p) for p, c in self._edges])

    def topological_order(self) -> list[str]:
        """Kahn's algorithm; smallest id first among ready nodes."""
        indegree = {pid: len(self._parents[pid]) for pid in self._names}
        heap = sorted(pid for pid, deg in indegree.items() if deg == 0)
        order: list[str] = []
        while heap:
            pid = heappop(heap)
            order.append(pid)
            for child in self._children[pid]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    heappush(heap, child)
        return order


def merge(g1: Polytree, g2: Polytree) -> Polytree:
    """Union of two polytrees by node id, with duplicate edges removed.

    Names unify by "non-empty beats empty"; if both graphs carry different
    non-empty names for one id, g1's name wins and a warning is logged.
    The union is revalidated, so merging two DAGs whose union contains a
    cycle raises CycleError.
    """
    names = dict(g1.names)
    for pid, name in g2.names.items():
        if pid not in names:
            names[pid] = name
        elif not names[pid]:
            names[pid] = name
        elif name and name != names[pid]:
            logger.warning(
                "name conflict for %r: keeping %r, ignoring %r", pid, names[pid], name
            )
    return Polytree(names.items(), set(g1.edges) | set(g2.edges))
