"""Brute-force reference implementations for verifying the engine.

Everything here recomputes results from first principles on small graphs:
dense Floyd-Warshall distances, exact-rational/high-precision power means,
and generation sets found by enumerating simple directed paths. None of it
shares traversal code with the production engine. Used by the test suite
and the CLI ``verify`` subcommand only.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .centrality import IN, OUT, CentralityScore
from .errors import TooLargeError
from .graph import Person, Polytree

MAX_NODES = 200
ROOT_DPS = 50


def _guard(g: Polytree) -> None:
    if len(g) > MAX_NODES:
        raise TooLargeError(f"oracle limited to {MAX_NODES} nodes, got {len(g)}")


def all_pairs_matrix(g: Polytree) -> tuple[tuple[str, ...], np.ndarray]:
    """Floyd-Warshall over a dense matrix; entry [a][b] = distance a -> b."""
    _guard(g)
    ids = g.node_ids
    index = {pid: k for k, pid in enumerate(ids)}
    n = len(ids)
    dist = np.full((n, n), math.inf)
    np.fill_diagonal(dist, 0.0)
    for parent, child in g.edges:
        dist[index[parent], index[child]] = 1.0
    for k in range(n):
        np.minimum(dist, np.add.outer(dist[:, k], dist[k, :]), out=dist)
    return ids, dist


def _reference_power_mean(distances: Sequence[float], h: float) -> float:
    """Naive evaluation of the power mean in exact/extended precision."""
    finite = [int(d) for d in distances if not math.isinf(d)]
    n_inf = len(distances) - len(finite)
    size = len(distances)
    if h > 0 and n_inf:
        return math.inf
    if float(h).is_integer():
        exponent = int(h)
        total = Fraction(0)
        for v in finite:
            total += Fraction(v) ** exponent
        if total == 0:
            return math.inf
        mean = total / size
        if exponent == 1:
            return float(mean)
        if exponent == -1:
            return float(1 / mean)
        with mpmath.workdps(ROOT_DPS):
            root = mpmath.power(
                mpmath.mpf(mean.numerator) / mpmath.mpf(mean.denominator),
                mpmath.mpf(1) / h,
            )
            return float(root)
    with mpmath.workdps(ROOT_DPS):
        total = mpmath.mpf(0)
        for v in finite:
            total += mpmath.power(v, h)
        if total == 0:
            return math.inf
        return float(mpmath.power(total / size, mpmath.mpf(1) / h))


def holder_scores(
    g: Polytree,
    h: float,
    direction: str = OUT,
    mask: Iterable[str] | None = None,
) -> list[CentralityScore]:
    """Direct evaluation of the mean-distance formula over the dense matrix."""
    ids, dist = all_pairs_matrix(g)
    index = {pid: k for k, pid in enumerate(ids)}
    targets = ids if mask is None else tuple(sorted(set(mask)))
    scores = []
    for i in ids:
        row = [t for t in targets if t != i]
        if not row:
            scores.append(CentralityScore(i, math.inf, 0.0))
            continue
        if direction == OUT:
            ds = [dist[index[i], index[t]] for t in row]
        elif direction == IN:
            ds = [dist[index[t], index[i]] for t in row]
        else:
            raise ValueError(f"bad direction {direction!r}")
        mean = _reference_power_mean(ds, h)
        closeness = 0.0 if math.isinf(mean) else (math.inf if mean == 0 else 1.0 / mean)
        scores.append(CentralityScore(i, mean, closeness))
    return scores


def _min_simple_path_lengths(
    adjacency: dict[str, tuple[str, ...]], start: str, limit: int
) -> dict[str, int]:
    """Minimum length over all simple paths from start, up to ``limit`` hops."""
    best: dict[str, int] = {}
    on_path = {start}

    def walk(cur: str, depth: int) -> None:
        if depth == limit:
            return
        for nxt in adjacency[cur]:
            if nxt in on_path:
                continue
            d = depth + 1
            if nxt not in best or d < best[nxt]:
                best[nxt] = d
            on_path.add(nxt)
            walk(nxt, d)
            on_path.discard(nxt)

    walk(start, 0)
    return best


def generation_set(g: Polytree, origin: str, n: int, orientation: str = "ancestors") -> frozenset[str]:
    """Generation-n set by simple-path enumeration: sources whose shortest
    path (= minimum over enumerated simple paths) has length exactly n."""
    _guard(g)
    adjacency = g._parents if orientation == "ancestors" else g._children
    best = _min_simple_path_lengths(adjacency, origin, n)
    return frozenset(pid for pid, d in best.items() if d == n)


def cross_matrix(
    g: Polytree, mask: Iterable[str], n: int, orientation: str = "ancestors"
) -> tuple[tuple[str, ...], list[list[float]]]:
    _guard(g)
    nodes = tuple(sorted(set(mask)))
    sets = {pid: generation_set(g, pid, n, orientation) for pid in nodes}
    values = []
    for a in nodes:
        row = []
        for b in nodes:
            sa, sb = sets[a], sets[b]
            if not sa and not sb:
                row.append(0.0)
            else:
                row.append(len(sa & sb) / max(len(sa), len(sb)))
        values.append(row)
    return nodes, values


def random_dag(rng: random.Random, n_nodes: int, edge_prob: float) -> Polytree:
    """Random DAG: draw a permutation as topological order, then keep each
    forward pair independently with probability ``edge_prob``."""
    ids = [f"n{k:03d}" for k in range(n_nodes)]
    order = ids[:]
    rng.shuffle(order)
    edges = [
        (order[a], order[b])
        for a in range(n_nodes)
        for b in range(a + 1, n_nodes)
        if rng.random() < edge_prob
    ]
    return Polytree([Person(pid) for pid in ids], edges)
