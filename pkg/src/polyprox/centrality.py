"""Vertical closeness: generalized (power) mean distance and its reciprocal.

The mean distance of a node i with exponent h aggregates the shortest-path
distances d(i, j) over a target set J (all other nodes, or a selection mask)
as ``((1/|J|) * sum d^h) ** (1/h)``. Conventions, chosen so unconnected
graphs stay meaningful:

* h < 0: an unreachable target contributes 0 to the sum (inf**h -> 0), so
  the mean is finite whenever at least one target is reachable.
* h > 0: any unreachable target makes the mean distance +inf.
* closeness = 1 / mean distance, with 1/inf = 0 and 1/0 = +inf.
* An empty target set (single-node graph, or a node that is the only mask
  member) yields mean distance +inf and closeness 0 rather than an error.

The node itself is always excluded from its own target set. Summation uses
math.fsum with terms in ascending target-id order, so results are
deterministic and independent of any execution schedule.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .distances import bfs_levels
from .errors import (
    EmptyGraphError,
    EmptyInputError,
    EmptyMaskError,
    ZeroExponentError,
)
from .graph import Polytree

logger = logging.getLogger(__name__)

OUT = "out"
IN = "in"


@dataclass(frozen=True)
class CentralityScore:
    node: str
    mean_distance: float
    closeness: float


def holder_mean(values: Iterable[float], h: float) -> float:
    """Power mean of a multiset of distances (each >= 1, or +inf).

    For h < 0 infinite values contribute 0; for h > 0 any infinite value
    makes the result infinite. Raises on an empty multiset or h = 0, where
    the formula is undefined.
    """
    if h == 0:
        raise ZeroExponentError()
    finite: list[float] = []
    n_inf = 0
    for v in values:
        if math.isinf(v):
            n_inf += 1
        else:
            finite.append(v)
    size = len(finite) + n_inf
    if size == 0:
        raise EmptyInputError("power mean of an empty multiset")
    return _mean_from_terms(finite, n_inf, size, h)


def _mean_from_terms(finite: Sequence[float], n_inf: int, size: int, h: float) -> float:
    if h > 0 and n_inf:
        return math.inf
    total = math.fsum(v**h for v in finite)
    if total == 0.0:
        return math.inf  # every target unreachable under h < 0
    return (total / size) ** (1.0 / h)


def _closeness(mean: float) -> float:
    if math.isinf(mean):
        return 0.0
    if mean == 0.0:
        return math.inf
    return 1.0 / mean


def holder_centrality(g: Polytree, h: float, direction: str = OUT) -> list[CentralityScore]:
    """Mean distance and closeness for every node, targets = all other nodes.

    ``direction="out"`` aggregates d(i -> j) following parent -> child edges
    (reach over descendants); ``"in"`` aggregates d(j -> i).
    """
    if len(g) == 0:
        raise EmptyGraphError("cannot score an empty graph")
    return _score_against_targets(g, g.node_ids, h, direction)


def harmonic_centrality(g: Polytree, direction: str = OUT) -> list[CentralityScore]:
    """holder_centrality at h = -1: well-defined on unconnected graphs."""
    return holder_centrality(g, -1.0, direction)


def holder_nobelity(
    g: Polytree, mask: Iterable[str], h: float, direction: str = OUT
) -> list[CentralityScore]:
    """Scores for every node against a selection mask of target nodes.

    Runs one BFS per masked node, so small masks on large graphs are cheap.
    With mask = all nodes this equals holder_centrality exactly.
    """
    targets = sorted(set(mask))
    if not targets:
        raise EmptyMaskError("selection mask is empty")
    for pid in targets:
        g.require(pid)
    return _score_against_targets(g, targets, h, direction)


def harmonic_nobelity(
    g: Polytree, mask: Iterable[str], direction: str = OUT
) -> list[CentralityScore]:
    return holder_nobelity(g, mask, -1.0, direction)


def _score_against_targets(
    g: Polytree, targets: Sequence[str], h: float, direction: str
) -> list[CentralityScore]:
    if h == 0:
        raise ZeroExponentError()
    if direction == OUT:
        adjacency = g._parents  # reverse BFS from j gives d(i -> j) for all i
    elif direction == IN:
        adjacency = g._children  # forward BFS from j gives d(j -> i)
    else:
        raise ValueError(f"direction must be {OUT!r} or {IN!r}, got {direction!r}")

    # Per-node distance terms, appended in ascending target order (targets is
    # sorted), which fixes the summation order.
    terms: dict[str, list[int]] = {pid: [] for pid in g.node_ids}
    target_set = frozenset(targets)
    for j in targets:
        for i, d in bfs_levels(adjacency, j).items():
            if i != j:
                terms[i].append(d)

    scores: list[CentralityScore] = []
    unreached_nodes = 0
    for i in g.node_ids:
        j_size = len(targets) - (1 if i in target_set else 0)
        if j_size == 0:
            scores.append(CentralityScore(i, math.inf, 0.0))
            continue
        finite = terms[i]
        n_inf = j_size - len(finite)
        if n_inf:
            unreached_nodes += 1
        mean = _mean_from_terms(finite, n_inf, j_size, h)
        scores.append(CentralityScore(i, mean, _closeness(mean)))

    if h > 0 and unreached_nodes:
        logger.warning(
            "h=%g with %d of %d nodes unable to reach every target: "
            "their mean distance is inf (consider h < 0)",
            h,
            unreached_nodes,
            len(scores),
        )
    return scores
