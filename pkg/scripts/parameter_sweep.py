"""Micro F1 against p, q, dim and context size, with and without ARGEW.

Defaults to a small synthetic planted-partition graph; pass --edges/--labels for real data.
ARGEW corpora grow by up to 2**high copies per substitution, so the default
rescale range here is [1, 4]; pass --high 9 for the full setting (slow).

    python3 scripts/parameter_sweep.py
    python3 scripts/parameter_sweep.py --edges cora.tsv --labels cora_labels.tsv
"""

import argparse

import numpy as np

from argew.graph import build_graph
from argew.pipeline import PipelineConfig, SweepSpec, run_sweep, sweep_tsv

GRID = {
    "p": [0.25, 1, 4],
    "q": [0.25, 1, 4],
    "dim": [16, 64, 128],
    "context_size": [3, 5, 10],
}


def planted_partition(blocks=3, size=15, p_in=0.4, p_out=0.04, seed=0):
    rng = np.random.default_rng(seed)
    n = blocks * size
    labels = [v // size for v in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            same = labels[u] == labels[v]
            if rng.random() < (p_in if same else p_out):
                edges.append((u, v, float(rng.integers(2, 6) if same else 1)))
    return build_graph(edges, n), labels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--edges")
    ap.add_argument("--labels")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--walk-length", type=int, default=20)
    ap.add_argument("--high", type=float, default=4.0)
    args = ap.parse_args()
    if args.edges:
        cfg = PipelineConfig(edges=args.edges, labels=args.labels, seed=args.seed, high=args.high)
        graph = labels = None
    else:
        cfg = PipelineConfig(seed=args.seed, walk_length=args.walk_length, high=args.high)
        graph, labels = planted_partition()
    for param, values in GRID.items():
        spec = SweepSpec(param, values)
        print(sweep_tsv(spec, run_sweep(spec, cfg, graph, labels)))


if __name__ == "__main__":
    main()
