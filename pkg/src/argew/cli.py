"""Command-line entry point: ``argew <subcommand> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from argew import io
from argew.augment import Corpus, augment_corpus
from argew.evaluation import classification_protocol, coappearance_distribution, similarity_by_weight_bin
from argew.pipeline import PipelineConfig, SweepSpec, coerce, load_config, run_pipeline, run_sweep, sweep_tsv
from argew.roles import build_roles_graph, node_type, run_coappearance_experiment
from argew.sgns import SgnsConfig, train
from argew.walks import Strategy, WalkConfig, sample_walks, split_windows

_DEFAULTS = PipelineConfig()


def _walk_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="node2vec")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--walk-length", type=int, default=_DEFAULTS.walk_length)
    p.add_argument("--walks-per-node", type=int, default=10)
    p.add_argument("--context-size", type=int, default=_DEFAULTS.context_size)


def _sgns_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=_DEFAULTS.dim)
    p.add_argument("--negatives", type=int, default=_DEFAULTS.negatives)
    p.add_argument("--learning-rate", type=float, default=_DEFAULTS.learning_rate)
    p.add_argument("--max-epochs", type=int, default=_DEFAULTS.max_epochs)
    p.add_argument("--batch-size", type=int, default=1024)
    p.add_argument("--grad-reduction", choices=["sum", "mean"], default="sum")
    p.add_argument("--context-size", type=int, default=_DEFAULTS.context_size)


def _config_args(p: argparse.ArgumentParser) -> None:
    """One flag per PipelineConfig field; unset flags leave the config value alone."""
    p.add_argument("--config", help="flat key = value config file")
    for f in dataclasses.fields(PipelineConfig):
        if f.name == "seed":
            continue
        flag = "--" + f.name.replace("_", "-")
        if f.type.startswith("bool"):
            p.add_argument(flag, dest=f.name, action="store_true", default=argparse.SUPPRESS)
            p.add_argument("--no-" + f.name.replace("_", "-"), dest=f.name, action="store_false",
                           default=argparse.SUPPRESS)
        else:
            p.add_argument(flag, dest=f.name, default=argparse.SUPPRESS,
                           type=lambda raw, name=f.name: coerce(name, raw))


def _pipeline_config(args) -> PipelineConfig:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    overrides = {f.name: getattr(args, f.name) for f in dataclasses.fields(PipelineConfig) if hasattr(args, f.name)}
    return dataclasses.replace(cfg, **overrides)


def cmd_synth(args) -> None:
    g = build_roles_graph()
    io.write_edge_list(args.out_edges, g)
    if args.out_labels:
        io.write_labels(args.out_labels, [node_type(v).value for v in range(g.node_count)])


def cmd_walk(args) -> None:
    g, _ = io.load_edge_list(args.edges)
    cfg = WalkConfig(Strategy(args.strategy), args.p, args.q, args.walk_length,
                     args.walks_per_node, args.context_size, args.seed)
    windows = [w for walk in sample_walks(g, cfg) for w in split_windows(walk, cfg.context_size)]
    io.save_corpus(args.out, Corpus.from_windows(windows))


def cmd_augment(args) -> None:
    g, _ = io.load_edge_list(args.edges)
    corpus = io.load_corpus(args.corpus)
    windows = [w for w, c in corpus.entries for _ in range(c)]
    io.save_corpus(args.out, augment_corpus(g, windows, args.low, args.high))


def cmd_train(args) -> None:
    g, id_map = io.load_edge_list(args.edges)
    corpus = io.load_corpus(args.corpus)
    cfg = SgnsConfig(args.dim, args.negatives, args.learning_rate, args.max_epochs,
                     args.batch_size, args.seed, args.grad_reduction)
    emb, report = train(corpus, g.node_count, args.context_size, cfg)
    logging.info("trained %d epochs, losses %s", report.epochs_run, report.epoch_losses)
    io.save_embeddings(args.out, emb.center, list(id_map))


def _graph_and_vectors(args):
    g, id_map = io.load_edge_list(args.edges)
    names, vecs = io.load_embeddings(args.embeddings)
    return g, id_map, io.order_embeddings(names, vecs, id_map)


def cmd_eval_sim(args) -> None:
    g, _, vecs = _graph_and_vectors(args)
    report = similarity_by_weight_bin(g, vecs, args.bins, args.nonedge_cap, args.seed)
    io.write_text(args.out, io.similarity_tsv(report))


def cmd_eval_clf(args) -> None:
    g, id_map, vecs = _graph_and_vectors(args)
    labels = io.load_labels(args.labels, id_map)
    report = classification_protocol(vecs, labels, args.seed, args.splits, args.train_fraction, args.l2_strength)
    io.write_text(args.out, io.classification_tsv(report))


def cmd_coappear(args) -> None:
    if args.corpus:
        if not (args.edges and args.types):
            raise ValueError("--corpus needs --edges and --types")
        _, id_map = io.load_edge_list(args.edges)
        types = io.load_labels(args.types, id_map)
        table = coappearance_distribution(io.load_corpus(args.corpus).entries, lambda v: types[v])
    else:
        table = run_coappearance_experiment(args.argew, args.p, args.q, args.seed)
    io.write_text(args.out, io.coappearance_tsv(table))


def cmd_pipeline(args) -> None:
    cfg = dataclasses.replace(_pipeline_config(args), seed=args.seed)
    if cfg.out_dir is None:
        raise ValueError("pipeline needs --out-dir")
    result = run_pipeline(cfg)
    for path in result.files:
        print(path)


def cmd_sweep(args) -> None:
    cfg = dataclasses.replace(_pipeline_config(args), seed=args.seed)
    spec = SweepSpec(args.param, args.values.split(","))
    if cfg.labels is None:
        raise ValueError("sweep needs --labels")
    io.write_text(args.out, sweep_tsv(spec, run_sweep(spec, cfg)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argew", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="write the 19-node roles graph and its node types")
    p.add_argument("--out-edges", required=True)
    p.add_argument("--out-labels")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("walk", help="sample walks and write their windows as a corpus")
    p.add_argument("--edges", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    _walk_args(p)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("augment", help="apply ARGEW to a window corpus")
    p.add_argument("--edges", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--low", type=float, default=_DEFAULTS.low)
    p.add_argument("--high", type=float, default=_DEFAULTS.high)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("train", help="train SGNS embeddings on a corpus")
    p.add_argument("--edges", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    _sgns_args(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval-sim", help="cosine similarity per edge-weight bin")
    p.add_argument("--edges", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bins", type=int, required=True)
    p.add_argument("--nonedge-cap", type=int, default=_DEFAULTS.nonedge_cap)
    p.set_defaults(func=cmd_eval_sim)

    p = sub.add_parser("eval-clf", help="one-vs-rest logistic regression, micro/macro F1")
    p.add_argument("--edges", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--splits", type=int, default=_DEFAULTS.splits)
    p.add_argument("--train-fraction", type=float, default=_DEFAULTS.train_fraction)
    p.add_argument("--l2-strength", type=float, default=_DEFAULTS.l2_strength)
    p.set_defaults(func=cmd_eval_clf)

    p = sub.add_parser("coappear", help="coappearance proportions (roles graph unless --corpus)")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--argew", action="store_true")
    p.add_argument("--corpus")
    p.add_argument("--edges")
    p.add_argument("--types", help="node<TAB>type file for --corpus")
    p.set_defaults(func=cmd_coappear)

    p = sub.add_parser("pipeline", help="walk, augment, train and evaluate in one go")
    p.add_argument("--seed", type=int, required=True)
    _config_args(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("sweep", help="micro F1 across values of one parameter, with and without ARGEW")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--values", required=True, help="comma-separated")
    p.add_argument("--out", required=True)
    _config_args(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001
        msg = " ".join(str(exc).split())
        print(f"argew {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
