"""Embedding evaluation: weight-binned cosine similarity, OvR logistic regression, F1, coappearance."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from argew.graph import GraphError, WeightedGraph


@dataclass
class WeightBin:
    low: float
    high: float
    count: int
    median: float
    mean: float


@dataclass
class SimilarityBinReport:
    """``bins[0]`` holds non-edge pairs (weight 0); the rest split (0, max_weight]."""

    bins: list[WeightBin]

    def medians(self) -> list[float]:
        return [b.median for b in self.bins]


@dataclass
class ClassificationReport:
    micro_f1: float
    macro_f1: float
    splits: list[tuple[float, float]] = field(default_factory=list)


@dataclass
class CoappearanceTable:
    """``rows[first node type][coappearing type]`` proportions; each row sums to 1."""

    types: list[str]
    rows: dict[str, dict[str, float]]


def cosine(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("cosine similarity undefined for a zero vector")
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def _unit_rows(x: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("embedding contains a zero vector")
    return x / norms


def sample_nonedges(g: WeightedGraph, cap: int, rng: np.random.Generator) -> np.ndarray:
    """Up to ``cap`` distinct non-adjacent pairs (u < v), uniformly without replacement."""
    n = g.node_count
    total = n * (n - 1) // 2 - g.edge_count
    if total <= cap:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
        return np.array(pairs, dtype=np.int64).reshape(-1, 2)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < cap:
        u, v = rng.integers(0, n, size=2).tolist()
        if u == v or g.has_edge(u, v):
            continue
        chosen.add((min(u, v), max(u, v)))
    return np.array(sorted(chosen), dtype=np.int64)


def _bin_stats(low, high, values: np.ndarray) -> WeightBin:
    if values.size == 0:
        return WeightBin(low, high, 0, float("nan"), float("nan"))
    return WeightBin(low, high, int(values.size), float(np.median(values)), float(values.mean()))


def similarity_by_weight_bin(
    g: WeightedGraph,
    vectors: np.ndarray,
    n_bins: int,
    nonedge_cap: int = 1_000_000,
    seed: int = 0,
) -> SimilarityBinReport:
    """Median and mean cosine similarity per equal-width edge-weight bin.

    Bins are right-closed over (0, max_weight]; bin 0 holds sampled non-edges.
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    edges = g.edges()
    if not edges:
        raise GraphError("similarity bins need at least one edge")
    unit = _unit_rows(np.asarray(vectors, dtype=float))

    e = np.array([(u, v) for u, v, _ in edges], dtype=np.int64)
    w = np.array([wt for _, _, wt in edges])
    edge_cos = np.clip(np.einsum("ij,ij->i", unit[e[:, 0]], unit[e[:, 1]]), -1, 1)
    wmax = float(w.max())
    upper = wmax * np.arange(1, n_bins + 1) / n_bins
    upper[-1] = wmax
    which = np.searchsorted(upper, w, side="left")

    ne = sample_nonedges(g, nonedge_cap, np.random.default_rng(seed))
    ne_cos = np.clip(np.einsum("ij,ij->i", unit[ne[:, 0]], unit[ne[:, 1]]), -1, 1) if len(ne) else np.zeros(0)

    bins = [_bin_stats(0.0, 0.0, ne_cos)]
    lower = 0.0
    for i in range(n_bins):
        bins.append(_bin_stats(lower, float(upper[i]), edge_cos[which == i]))
        lower = float(upper[i])
    return SimilarityBinReport(bins)


def stratified_split(labels: Sequence[Hashable], train_fraction: float, seed) -> tuple[np.ndarray, np.ndarray]:
    """Per-category seeded shuffle; each category sends round-half-up(size * fraction) to train.

    The train share is clamped to [1, size - 1] so both sides see every category.
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    groups: dict = defaultdict(list)
    for i, lab in enumerate(labels):
        groups[lab].append(i)
    rng = np.random.default_rng(seed)
    train, test = [], []
    for lab in sorted(groups, key=str):
        members = np.array(groups[lab])
        if len(members) < 2:
            raise ValueError(f"category {lab!r} has a single member; cannot stratify")
        members = rng.permutation(members)
        k = int(np.floor(len(members) * train_fraction + 0.5))
        k = min(max(k, 1), len(members) - 1)
        train.extend(members[:k].tolist())
        test.extend(members[k:].tolist())
    return np.sort(np.array(train)), np.sort(np.array(test))


@dataclass
class OvrLogisticRegression:
    classes: list
    weights: np.ndarray  # (n_classes, d)
    bias: np.ndarray

    def scores(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.weights.T + self.bias

    def predict(self, x: np.ndarray) -> list:
        # argmax keeps the first maximum, i.e. the smallest class index
        return [self.classes[i] for i in np.argmax(self.scores(x), axis=1)]


def train_ovr_logreg(
    features: np.ndarray,
    labels: Sequence[Hashable],
    train_ids,
    l2_strength: float = 1.0,
    iterations: int = 500,
    step: float = 0.1,
) -> OvrLogisticRegression:
    """One binary logistic model per class, fit by full-batch gradient descent.

    Minimizes mean log loss + l2_strength / (2 n) * ||w||^2 per class (bias
    unpenalized), starting from zeros. The L2 part is applied as a proximal
    shrink so large strengths stay stable at a fixed step.
    """
    ids = np.asarray(train_ids, dtype=np.int64)
    x = np.asarray(features, dtype=float)[ids]
    y_lab = [labels[i] for i in ids]
    classes = sorted(set(y_lab), key=str)
    if len(classes) < 2:
        raise ValueError("training data must contain at least two categories")
    n, d = x.shape
    index = {c: i for i, c in enumerate(classes)}
    y = np.zeros((n, len(classes)))
    y[np.arange(n), [index[c] for c in y_lab]] = 1.0

    W = np.zeros((len(classes), d))
    b = np.zeros(len(classes))
    shrink = 1.0 / (1.0 + step * l2_strength / n)
    for _ in range(iterations):
        z = x @ W.T + b
        r = 0.5 * (1.0 + np.tanh(0.5 * z)) - y  # sigmoid(z) - y
        W = (W - step * (r.T @ x) / n) * shrink
        b = b - step * r.mean(axis=0)
    return OvrLogisticRegression(classes, W, b)


def f1_scores(true_labels: Sequence[Hashable], predicted_labels: Sequence[Hashable]) -> tuple[float, float]:
    """(micro F1, macro F1); macro averages over every category seen in either list."""
    if len(true_labels) != len(predicted_labels):
        raise ValueError(f"length mismatch: {len(true_labels)} true vs {len(predicted_labels)} predicted")
    if len(true_labels) == 0:
        raise ValueError("f1 needs at least one item")
    # exact rationals, rounded once at the end
    true_labels, predicted_labels = list(true_labels), list(predicted_labels)
    correct = sum(t == p for t, p in zip(true_labels, predicted_labels))
    micro = Fraction(correct, len(true_labels))
    per_class = []
    for c in set(true_labels) | set(predicted_labels):
        tp = sum(t == c and p == c for t, p in zip(true_labels, predicted_labels))
        denom = true_labels.count(c) + predicted_labels.count(c)
        per_class.append(Fraction(2 * tp, denom) if denom else Fraction(0))
    return float(micro), float(sum(per_class) / len(per_class))


def classification_protocol(
    vectors: np.ndarray,
    labels: Sequence[Hashable],
    seed: int,
    splits: int = 10,
    train_fraction: float = 0.5,
    l2_strength: float = 1.0,
) -> ClassificationReport:
    if len(set(labels)) < 2:
        raise ValueError("classification needs at least two categories")
    vectors = np.asarray(vectors, dtype=float)
    scores = []
    for s in range(splits):
        train_ids, test_ids = stratified_split(labels, train_fraction, [seed, s])
        model = train_ovr_logreg(vectors, labels, train_ids, l2_strength)
        pred = model.predict(vectors[test_ids])
        scores.append(f1_scores([labels[i] for i in test_ids], pred))
    arr = np.array(scores)
    return ClassificationReport(float(arr[:, 0].mean()), float(arr[:, 1].mean()), [tuple(r) for r in scores])


def coappearance_distribution(
    windows: Iterable,
    node_type_of: Callable[[int], str],
    types: Iterable[str] = (),
) -> CoappearanceTable:
    """Share of each node type among the later nodes of windows, grouped by the first node's type.

    ``windows`` yields plain windows or ``(window, count)`` entries. Columns
    cover ``types`` plus every type encountered.
    """
    counts: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    seen_types: set[str] = set(types)
    seen = False
    for item in windows:
        if len(item) == 2 and isinstance(item[1], (int, np.integer)) and not isinstance(item[0], (int, np.integer)):
            window, mult = item
        else:
            window, mult = item, 1
        seen = True
        first = node_type_of(window[0])
        seen_types.add(first)
        row = counts[first]
        for v in window[1:]:
            t = node_type_of(v)
            seen_types.add(t)
            row[t] += mult
    if not seen:
        raise ValueError("coappearance needs at least one window")
    ordered = sorted(seen_types)
    rows = {}
    for first in sorted(counts):
        total = sum(counts[first].values())
        if total:
            rows[first] = {t: counts[first].get(t, 0) / total for t in ordered}
    return CoappearanceTable(ordered, rows)
