"""Weighted undirected graphs and the edge-weight statistics used by node2vec+ and ARGEW."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Raised on invalid graph input or invalid node queries."""


class EdgeTightness(enum.Enum):
    LOOSE = "loose"
    TIGHT = "tight"


@dataclass(frozen=True)
class WeightStats:
    min_weight: float
    max_weight: float
    median_weight: float
    avg_weight_per_node: np.ndarray


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Immutable undirected graph with strictly positive edge weights.

    Nodes are dense integers ``0..node_count-1``. ``neighbors[u]`` is an
    ascending int array and ``weights[u]`` the matching edge weights.
    """

    node_count: int
    neighbors: tuple[np.ndarray, ...]
    weights: tuple[np.ndarray, ...]
    edge_count: int
    _lookup: tuple[dict[int, float], ...] = field(repr=False)
    _avg: np.ndarray = field(repr=False)

    def degree(self, u: int) -> int:
        self._check(u)
        return len(self.neighbors[u])

    def weight(self, u: int, v: int) -> float:
        """Edge weight, or 0.0 when (u, v) is not an edge."""
        self._check(u)
        self._check(v)
        return self._lookup[u].get(v, 0.0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._lookup[u]

    def neighbor_set(self, u: int):
        return self._lookup[u].keys()

    def edges(self) -> list[tuple[int, int, float]]:
        """Each undirected edge once, as (u, v, w) with u < v."""
        out = []
        for u in range(self.node_count):
            for v, w in zip(self.neighbors[u].tolist(), self.weights[u].tolist()):
                if u < v:
                    out.append((u, v, w))
        return out

    def edge_weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges()], dtype=float)

    def _check(self, u: int) -> None:
        if not (0 <= u < self.node_count):
            raise GraphError(f"invalid node id {u} (graph has {self.node_count} nodes)")


def build_graph(edges: Iterable[tuple[int, int, float]], node_count: int | None = None) -> WeightedGraph:
    """Symmetrize an edge list into a :class:`WeightedGraph`.

    Identical duplicates (in either direction) collapse; duplicates with
    different weights, self-loops and non-positive weights are rejected.
    ``node_count`` may be given to include trailing isolated nodes.
    """
    adj: dict[int, dict[int, float]] = {}
    top = -1
    for u, v, w in edges:
        u, v, w = int(u), int(v), float(w)
        if u < 0 or v < 0:
            raise GraphError(f"negative node id in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"self-loop on node {u}")
        if not w > 0 or not np.isfinite(w):
            raise GraphError(f"edge ({u}, {v}) has non-positive or non-finite weight {w}")
        old = adj.get(u, {}).get(v)
        if old is not None and old != w:
            raise GraphError(f"edge ({u}, {v}) given with conflicting weights {old} and {w}")
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w
        top = max(top, u, v)

    n = top + 1 if node_count is None else int(node_count)
    if n <= top:
        raise GraphError(f"node_count {n} too small for node id {top}")

    neighbors, weights, lookup = [], [], []
    avg = np.zeros(n)
    degree_sum = 0
    for u in range(n):
        row = adj.get(u, {})
        ids = sorted(row)
        neighbors.append(np.array(ids, dtype=np.int64))
        weights.append(np.array([row[x] for x in ids], dtype=float))
        lookup.append({x: row[x] for x in ids})
        degree_sum += len(ids)
        if ids:
            avg[u] = weights[-1].sum() / len(ids)
    return WeightedGraph(
        node_count=n,
        neighbors=tuple(neighbors),
        weights=tuple(weights),
        edge_count=degree_sum // 2,
        _lookup=tuple(lookup),
        _avg=avg,
    )


def avg_edge_weight(g: WeightedGraph, u: int) -> float:
    """Mean weight of the edges incident to ``u``; 0.0 for isolated nodes."""
    g._check(u)
    return float(g._avg[u])


def tightness(g: WeightedGraph, u: int, v: int) -> EdgeTightness:
    """Loose when there is no edge or ``w(u,v) < max(avg(u), avg(v))``."""
    g._check(u)
    g._check(v)
    if u == v:
        raise GraphError(f"tightness undefined for identical nodes ({u})")
    w = g._lookup[u].get(v)
    if w is None or w < max(g._avg[u], g._avg[v]):
        return EdgeTightness.LOOSE
    return EdgeTightness.TIGHT


def weight_stats(g: WeightedGraph) -> WeightStats:
    # median counts each undirected edge once
    w = g.edge_weights()
    if w.size == 0:
        raise GraphError("weight statistics need at least one edge")
    return WeightStats(
        min_weight=float(w.min()),
        max_weight=float(w.max()),
        median_weight=float(np.median(w)),
        avg_weight_per_node=g._avg.copy(),
    )
