"""Second-order biased random walks (node2vec, node2vec+) and window/pair extraction."""

from __future__ import annotations

import bisect
import enum
import itertools
from dataclasses import dataclass

import numpy as np

from argew.graph import GraphError, WeightedGraph


class Strategy(enum.Enum):
    NODE2VEC = "node2vec"
    NODE2VEC_PLUS = "node2vec+"


@dataclass(frozen=True)
class WalkConfig:
    strategy: Strategy = Strategy.NODE2VEC
    p: float = 1.0
    q: float = 1.0
    walk_length: int = 80
    walks_per_node: int = 10
    context_size: int = 10
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.strategy, str):
            object.__setattr__(self, "strategy", Strategy(self.strategy))
        if not (self.p > 0 and self.q > 0):
            raise ValueError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if self.walk_length < 1 or self.walks_per_node < 1:
            raise ValueError("walk_length and walks_per_node must be >= 1")
        if self.context_size < 2:
            raise ValueError(f"context_size must be >= 2, got {self.context_size}")
        if not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def _node2vec_bias(g: WeightedGraph, t: int, v: int, x: int, p: float, q: float) -> float:
    if x == t:
        return 1.0 / p
    if g.has_edge(t, x):
        return 1.0
    return 1.0 / q


def _node2vecplus_bias(g: WeightedGraph, t: int, v: int, x: int, p: float, q: float) -> float:
    if x == t:
        return 1.0 / p
    avg = g._avg
    w_tx = g._lookup[t].get(x, 0.0)
    tx_threshold = max(avg[x], avg[t])
    if w_tx > 0 and not w_tx < tx_threshold:
        return 1.0  # (t, x) tight
    w_vx = g._lookup[v][x]
    vx_loose = w_vx < max(avg[v], avg[x])
    if vx_loose:
        return min(1.0, 1.0 / q)
    return 1.0 / q + (1.0 - 1.0 / q) * (w_tx / tx_threshold)


_BIAS = {Strategy.NODE2VEC: _node2vec_bias, Strategy.NODE2VEC_PLUS: _node2vecplus_bias}


def _weights(g: WeightedGraph, t: int | None, v: int, params: WalkConfig) -> tuple[list[int], list[float]]:
    g._check(v)
    row = g._lookup[v]  # keys ascend by neighbor id
    if not row:
        raise GraphError(f"node {v} has no neighbors")
    nbrs, w = list(row), list(row.values())
    if t is None:
        return nbrs, w
    if t not in row:
        raise GraphError(f"previous node {t} is not a neighbor of {v}")
    bias = _BIAS[params.strategy]
    p, q = params.p, params.q
    return nbrs, [bias(g, t, v, x, p, q) * wx for x, wx in zip(nbrs, w)]


def transition_weights_node2vec(g: WeightedGraph, t: int | None, v: int, params: WalkConfig) -> list[tuple[int, float]]:
    nbrs, w = _weights(g, t, v, _with_strategy(params, Strategy.NODE2VEC))
    return list(zip(nbrs, w))


def transition_weights_node2vecplus(g: WeightedGraph, t: int | None, v: int, params: WalkConfig) -> list[tuple[int, float]]:
    nbrs, w = _weights(g, t, v, _with_strategy(params, Strategy.NODE2VEC_PLUS))
    return list(zip(nbrs, w))


def _with_strategy(params: WalkConfig, strategy: Strategy) -> WalkConfig:
    if params.strategy is strategy:
        return params
    return WalkConfig(strategy, params.p, params.q, params.walk_length,
                      params.walks_per_node, params.context_size, params.seed)


def next_node(g: WeightedGraph, t: int | None, v: int, params: WalkConfig, rng: np.random.Generator) -> int:
    """Draw one step by inverting the cumulative transition weights (ascending neighbor ids)."""
    nbrs, w = _weights(g, t, v, params)
    cum = list(itertools.accumulate(w))
    i = bisect.bisect_right(cum, rng.random() * cum[-1])
    return nbrs[min(i, len(cum) - 1)]


def walk_rng(seed: int, start: int, repetition: int) -> np.random.Generator:
    return np.random.default_rng([seed, start, repetition])


def sample_walk(g: WeightedGraph, start: int, params: WalkConfig, rng: np.random.Generator) -> list[int]:
    g._check(start)
    walk = [start]
    if g.degree(start) == 0:
        return walk
    prev = None
    while len(walk) < params.walk_length:
        cur = walk[-1]
        walk.append(next_node(g, prev, cur, params, rng))
        prev = cur
    return walk


def sample_walks(g: WeightedGraph, params: WalkConfig) -> list[list[int]]:
    """``walks_per_node`` walks from every node, ordered by (node, repetition).

    Walk (i, k) draws from its own stream keyed by (seed, i, k), so the
    result does not depend on the order walks are computed in.
    """
    return [
        sample_walk(g, i, params, walk_rng(params.seed, i, k))
        for i in range(g.node_count)
        for k in range(params.walks_per_node)
    ]


def split_windows(walk: list[int], context_size: int) -> list[list[int]]:
    if context_size < 2:
        raise ValueError(f"context_size must be >= 2, got {context_size}")
    walk = list(walk)
    if len(walk) < 2:
        return []
    if len(walk) < context_size:
        return [walk]
    return [walk[i:i + context_size] for i in range(len(walk) - context_size + 1)]


def positive_pairs(window: list[int]) -> list[tuple[int, int]]:
    if len(window) < 2:
        raise ValueError(f"window needs at least 2 nodes, got {len(window)}")
    first = window[0]
    return [(first, x) for x in window[1:]]
