"""Random-walk node embeddings for weighted homophilous graphs, with ARGEW corpus augmentation."""

from argew.augment import Corpus, RescaleSpec, augment_corpus, find_substitute, rescale_weight
from argew.graph import EdgeTightness, GraphError, WeightedGraph, build_graph, weight_stats
from argew.sgns import EmbeddingSet, SgnsConfig, train
from argew.walks import Strategy, WalkConfig, sample_walks, split_windows

__all__ = [
    "Corpus",
    "EdgeTightness",
    "EmbeddingSet",
    "GraphError",
    "RescaleSpec",
    "SgnsConfig",
    "Strategy",
    "WalkConfig",
    "WeightedGraph",
    "augment_corpus",
    "build_graph",
    "find_substitute",
    "rescale_weight",
    "sample_walks",
    "split_windows",
    "train",
    "weight_stats",
]
