"""Median cosine similarity per edge-weight bin on the roles graph, plus a rescale-range study.

    python3 scripts/similarity_bins.py --seeds 5
"""

import argparse

import numpy as np

from argew.pipeline import PipelineConfig, run_pipeline
from argew.roles import build_roles_graph


def medians(g, seeds, **kw):
    return np.array([run_pipeline(PipelineConfig(seed=s, n_bins=3, **kw), graph=g).similarity.medians()
                     for s in seeds])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    g = build_roles_graph()
    seeds = range(args.seeds)
    print("setting\tnon-edge\tw1\tw2\tw3\tincreasing")
    runs = [("node2vec", dict(argew=False))]
    runs += [(f"ARGEW high={h}", dict(argew=True, low=1, high=h)) for h in (2, 3, 9)]
    runs += [("ARGEW high=9, 10 walks", dict(argew=True, low=1, high=9, walks_per_node=10))]
    for name, kw in runs:
        m = medians(g, seeds, **kw)
        inc = sum(all(a < b for a, b in zip(r, r[1:])) for r in m)
        print(name + "\t" + "\t".join(f"{x:.3f}" for x in m.mean(axis=0)) + f"\t{inc}/{len(m)}")


if __name__ == "__main__":
    main()
