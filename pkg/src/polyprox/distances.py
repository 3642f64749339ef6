"""Unweighted shortest-path distances and generation-level sets on a polytree.

All functions are pure reads of an immutable Polytree and safe to run
concurrently. Distances are edge counts; unreachable pairs are +inf.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Mapping, Sequence

from .graph import Polytree

ANCESTORS = "ancestors"
DESCENDANTS = "descendants"


def bfs_levels(
    adjacency: Mapping[str, Sequence[str]],
    source: str,
    cutoff: int | None = None,
) -> dict[str, int]:
    """Hop counts from ``source``; only reached nodes appear in the result."""
    dist = {source: 0}
    queue = deque((source,))
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        if cutoff is not None and d > cutoff:
            continue
        for nxt in adjacency[cur]:
            if nxt not in dist:
                dist[nxt] = d
                queue.append(nxt)
    return dist


def distances_from(g: Polytree, src: str) -> dict[str, float]:
    """Distance from ``src`` to every node, following parent -> child edges."""
    g.require(src)
    reached = bfs_levels(g._children, src)
    return {pid: reached.get(pid, math.inf) for pid in g.node_ids}


def distances_to(g: Polytree, dst: str) -> dict[str, float]:
    """Distance from every node to ``dst``; equals distances_from on the
    edge-reversed graph."""
    g.require(dst)
    reached = bfs_levels(g._parents, dst)
    return {pid: reached.get(pid, math.inf) for pid in g.node_ids}


def level_set(
    g: Polytree, origin: str, n: int, orientation: str = ANCESTORS
) -> frozenset[str]:
    """Nodes at shortest-path distance exactly ``n`` from ``origin``.

    ``ancestors`` walks edges backwards (n=1 gives the parents), so a node
    reachable along paths of several lengths counts only at its shortest
    level. ``n=0`` returns ``{origin}``.
    """
    g.require(origin)
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    adjacency = _oriented_adjacency(g, orientation)
    reached = bfs_levels(adjacency, origin, cutoff=n)
    return frozenset(pid for pid, d in reached.items() if d == n)


def _oriented_adjacency(g: Polytree, orientation: str) -> Mapping[str, Sequence[str]]:
    if orientation == ANCESTORS:
        return g._parents
    if orientation == DESCENDANTS:
        return g._children
    raise ValueError(f"orientation must be {ANCESTORS!r} or {DESCENDANTS!r}, got {orientation!r}")
