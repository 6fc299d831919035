"""ARGEW: augment walk windows by substituting nodes with their heaviest common neighbor."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from argew.graph import GraphError, WeightedGraph, weight_stats


@dataclass(frozen=True)
class RescaleSpec:
    low: float
    high: float
    min_weight: float
    max_weight: float

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError(f"low ({self.low}) must not exceed high ({self.high})")
        if not (0 < self.min_weight <= self.max_weight):
            raise ValueError(f"need 0 < min_weight <= max_weight, got {self.min_weight}, {self.max_weight}")


@dataclass(frozen=True)
class Substitution:
    position: int
    substitute: int
    weight: float


@dataclass
class Corpus:
    """Walk windows with repetition counts; the SGNS training input."""

    entries: list[tuple[list[int], int]] = field(default_factory=list)

    @classmethod
    def from_windows(cls, windows: Iterable[Sequence[int]]) -> "Corpus":
        return cls([(list(w), 1) for w in windows])

    def add(self, window: Sequence[int], count: int = 1) -> None:
        if count < 1:
            raise ValueError(f"corpus count must be >= 1, got {count}")
        self.entries.append((list(window), int(count)))

    def total(self) -> int:
        return sum(c for _, c in self.entries)

    def multiset(self) -> Counter:
        out: Counter = Counter()
        for w, c in self.entries:
            out[tuple(w)] += c
        return out

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Corpus) and self.entries == other.entries


def rescale_weight(x: float, spec: RescaleSpec) -> float:
    """Min-max map of ``x`` from [min_weight, max_weight] onto [low, high]."""
    if not (spec.min_weight <= x <= spec.max_weight):
        raise ValueError(f"weight {x} outside [{spec.min_weight}, {spec.max_weight}]")
    if spec.min_weight == spec.max_weight:
        return spec.low
    frac = (x - spec.min_weight) / (spec.max_weight - spec.min_weight)
    return frac * (spec.high - spec.low) + spec.low


def augmentation_count(w_sub: float, spec: RescaleSpec) -> int:
    # fractional exponents are floored
    return math.floor(2.0 ** rescale_weight(w_sub, spec))


def find_substitute(g: WeightedGraph, window: Sequence[int], position: int) -> Substitution | None:
    """Heaviest neighbor of ``window[position]`` also adjacent to its window neighbors.

    Ties go to the smallest node id.
    """
    if not (0 <= position < len(window)):
        raise IndexError(f"position {position} outside window of length {len(window)}")
    v = window[position]
    candidates = g.neighbor_set(v)
    if position > 0:
        candidates = candidates & g.neighbor_set(window[position - 1])
    if position + 1 < len(window):
        candidates = candidates & g.neighbor_set(window[position + 1])

    best, best_w = None, 0.0
    for c in sorted(candidates):
        w = g.weight(v, c)
        if best_w < w:
            best, best_w = c, w
    if best is None:
        return None
    return Substitution(position, best, best_w)


def augment_corpus(
    g: WeightedGraph,
    windows: Iterable[Sequence[int]],
    low: float,
    high: float,
    threshold: float | None = None,
) -> Corpus:
    """Apply ARGEW to ``windows``.

    Each window is kept once, plus once more for every position whose
    substitute weight is strictly above ``threshold`` (the graph's median
    edge weight by default). Each such position also adds the derived
    window ``floor(2**r)`` times, ``r`` being the substitute weight
    rescaled onto [low, high].
    """
    if g.edge_count == 0:
        raise GraphError("ARGEW needs a graph with at least one edge")
    stats = weight_stats(g)
    spec = RescaleSpec(low, high, stats.min_weight, stats.max_weight)
    cutoff = stats.median_weight if threshold is None else threshold

    corpus = Corpus()
    for window in windows:
        window = list(window)
        keep = 1
        derived = []
        for pos in range(len(window)):
            sub = find_substitute(g, window, pos)
            if sub is None or not cutoff < sub.weight:
                continue
            keep += 1
            new = list(window)
            new[pos] = sub.substitute
            count = augmentation_count(sub.weight, spec)
            if count > 0:
                derived.append((new, count))
        corpus.add(window, keep)
        for new, count in derived:
            corpus.add(new, count)
    return corpus
