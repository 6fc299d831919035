"""Coappearance proportions on the roles graph, with and without ARGEW.

    python3 scripts/coappearance_tables.py --seeds 5
"""

import argparse

import numpy as np

from argew import io
from argew.roles import mean_row_differences, roles_corpus, run_coappearance_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    seeds = range(args.seeds)
    for q in (4.0, 0.25):
        for use_argew in (False, True):
            label = "ARGEW" if use_argew else "node2vec"
            print(f"== p=1 q={q} {label} (seed 0) ==")
            print(io.coappearance_tsv(run_coappearance_experiment(use_argew, 1.0, q, 0)), end="")
            d_int, d_etc = mean_row_differences(use_argew, 1.0, q, seeds)
            extra = [roles_corpus(use_argew, 1.0, q, s) for s in seeds]
            added = np.mean([c.total() - len(c) for c in extra]) if use_argew else 0
            print(f"bridge-vs-internal diff over {args.seeds} seeds: internals {d_int:.3f}, etc {d_etc:.3f}; "
                  f"mean augmented windows {added:g}\n")


if __name__ == "__main__":
    main()
