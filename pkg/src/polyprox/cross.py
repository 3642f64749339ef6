"""Horizontal (shared-ancestry) overlap between nodes and its aggregates.

The horizontal value of a pair (i, j) at generation n is the number of
shared generation-n ancestors divided by the larger of the two generation-n
ancestor counts: 1 for full siblings at n=1, 0.5 for half-siblings, 0.5 for
first cousins at n=2, 0.25 for second cousins at n=3, 0 for unrelated pairs.
Values are similarities in [0, 1]; when neither node has generation-n
ancestors the value is defined as 0. Shared descent is the same computation
with orientation="descendants".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .distances import ANCESTORS, level_set
from .errors import EmptyMaskError, InvalidDegreeError, ZeroExponentError
from .graph import Polytree


@dataclass(frozen=True)
class HorizontalMatrix:
    """Symmetric matrix of pairwise overlap values over a node mask."""

    nodes: tuple[str, ...]
    degree: int
    orientation: str
    values: tuple[tuple[float, ...], ...]

    def value(self, i: str, j: str) -> float:
        idx = {pid: k for k, pid in enumerate(self.nodes)}
        return self.values[idx[i]][idx[j]]


def _overlap(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / max(len(a), len(b))


def horizontal_distance(
    g: Polytree, i: str, j: str, n: int, orientation: str = ANCESTORS
) -> float:
    """Overlap ratio of the generation-n ancestor sets of two nodes."""
    if n < 1:
        raise InvalidDegreeError(n)
    return _overlap(level_set(g, i, n, orientation), level_set(g, j, n, orientation))


def cross_distance(
    g: Polytree, mask: Iterable[str], n: int, orientation: str = ANCESTORS
) -> HorizontalMatrix:
    """Pairwise overlap matrix over the mask; level sets computed once per node."""
    nodes = _checked_mask(g, mask)
    if n < 1:
        raise InvalidDegreeError(n)
    sets = {pid: level_set(g, pid, n, orientation) for pid in nodes}
    values = tuple(
        tuple(_overlap(sets[a], sets[b]) for b in nodes) for a in nodes
    )
    return HorizontalMatrix(nodes, n, orientation, values)


def cross_closeness(
    g: Polytree,
    mask: Iterable[str],
    n: int,
    h: float = 1.0,
    orientation: str = ANCESTORS,
) -> list[tuple[str, float]]:
    """Per-node generalized mean of its overlap row against the rest of the mask.

    Overlap values are similarities, so the row is aggregated directly (the
    default h=1 is the arithmetic mean). For h < 0 a zero entry forces the
    score to 0, the continuous limit of the power mean as that entry goes to
    zero; a node with an empty target set also scores 0.
    """
    if h == 0:
        raise ZeroExponentError()
    matrix = cross_distance(g, mask, n, orientation)
    scores: list[tuple[str, float]] = []
    for k, pid in enumerate(matrix.nodes):
        row = [v for m, v in enumerate(matrix.values[k]) if m != k]
        scores.append((pid, _similarity_mean(row, h)))
    return scores


def _similarity_mean(row: list[float], h: float) -> float:
    if not row:
        return 0.0
    if h < 0 and any(v == 0.0 for v in row):
        return 0.0
    return (math.fsum(v**h for v in row) / len(row)) ** (1.0 / h)


def _checked_mask(g: Polytree, mask: Iterable[str]) -> tuple[str, ...]:
    nodes = sorted(set(mask))
    if not nodes:
        raise EmptyMaskError("selection mask is empty")
    for pid in nodes:
        g.require(pid)
    return tuple(nodes)
