"""The 19-node synthetic structural-roles graph and its coappearance experiment."""

from __future__ import annotations

import enum

import numpy as np

from argew.augment import Corpus, augment_corpus
from argew.evaluation import CoappearanceTable, coappearance_distribution
from argew.graph import WeightedGraph, build_graph
from argew.walks import Strategy, WalkConfig, sample_walks, split_windows


class NodeType(enum.Enum):
    C4_INTERNAL = "c4internal"
    C4_BRIDGE = "c4bridge"
    C13_INTERNAL = "c13internal"
    C13_BRIDGE = "c13bridge"
    C18_INTERNAL = "c18internal"
    C18_BRIDGE = "c18bridge"
    ETC = "etc"


COMMUNITY_WEIGHT = 3.0
BRIDGE_ETC_WEIGHT = 2.0
INTERNAL_ETC_WEIGHT = 1.0

# bridge -> internal members
COMMUNITIES = {4: (0, 1, 2, 3), 13: (9, 10, 11, 12), 18: (14, 15, 16, 17)}
ETC_NODES = (5, 6, 7, 8)

_TYPES = {}
for _bridge, _members, _internal, _btype in (
    (4, (0, 1, 2, 3), NodeType.C4_INTERNAL, NodeType.C4_BRIDGE),
    (13, (9, 10, 11, 12), NodeType.C13_INTERNAL, NodeType.C13_BRIDGE),
    (18, (14, 15, 16, 17), NodeType.C18_INTERNAL, NodeType.C18_BRIDGE),
):
    _TYPES[_bridge] = _btype
    _TYPES.update({m: _internal for m in _members})
_TYPES.update({e: NodeType.ETC for e in ETC_NODES})


def build_roles_graph() -> WeightedGraph:
    edges = []
    for bridge, members in COMMUNITIES.items():
        group = sorted((bridge,) + members)
        edges += [(a, b, COMMUNITY_WEIGHT) for i, a in enumerate(group) for b in group[i + 1:]]
        edges += [(bridge, e, BRIDGE_ETC_WEIGHT) for e in ETC_NODES]
    # internals in ascending id, round-robin onto etc nodes
    internals = sorted(m for members in COMMUNITIES.values() for m in members)
    edges += [(m, ETC_NODES[i % len(ETC_NODES)], INTERNAL_ETC_WEIGHT) for i, m in enumerate(internals)]
    return build_graph(edges)


def node_type(v: int) -> NodeType:
    if v not in _TYPES:
        raise ValueError(f"node {v} is not in the roles graph (ids 0-18)")
    return _TYPES[v]


def roles_corpus(use_argew: bool, p: float, q: float, seed: int,
                 strategy: Strategy = Strategy.NODE2VEC) -> Corpus:
    g = build_roles_graph()
    cfg = WalkConfig(strategy=strategy, p=p, q=q, walk_length=10,
                     walks_per_node=5 if use_argew else 20, context_size=3, seed=seed)
    windows = [w for walk in sample_walks(g, cfg) for w in split_windows(walk, cfg.context_size)]
    if use_argew:
        return augment_corpus(g, windows, low=1.0, high=9.0)
    return Corpus.from_windows(windows)


def run_coappearance_experiment(use_argew: bool, p: float, q: float, seed: int) -> CoappearanceTable:
    """Walk the roles graph with the coappearance settings and tabulate coappearing types.

    Without ARGEW: 20 walks per node; with ARGEW: 5 walks per node and a
    [1, 9] rescale range. Walk length 10, context size 3 in both cases.
    """
    corpus = roles_corpus(use_argew, p, q, seed)
    return coappearance_distribution(corpus.entries, lambda v: node_type(v).value, [t.value for t in NodeType])


def row_differences(table: CoappearanceTable, bridge: int = 13) -> tuple[float, float]:
    """|bridge row - internal row| in the same-community-internal and etc columns."""
    b = node_type(bridge).value
    internal = node_type(COMMUNITIES[bridge][0]).value
    rows = table.rows
    d_internal = abs(rows[b][internal] - rows[internal][internal])
    d_etc = abs(rows[b][NodeType.ETC.value] - rows[internal][NodeType.ETC.value])
    return float(d_internal), float(d_etc)


def mean_row_differences(use_argew: bool, p: float, q: float, seeds) -> tuple[float, float]:
    diffs = np.array([row_differences(run_coappearance_experiment(use_argew, p, q, s)) for s in seeds])
    return tuple(diffs.mean(axis=0))
