"""Walk -> (ARGEW) -> SGNS -> evaluation orchestration and the parameter sweep harness."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from argew import io
from argew.augment import Corpus, augment_corpus
from argew.evaluation import ClassificationReport, SimilarityBinReport, classification_protocol, similarity_by_weight_bin
from argew.graph import WeightedGraph
from argew.sgns import EmbeddingSet, SgnsConfig, TrainReport, train
from argew.walks import Strategy, WalkConfig, sample_walks, split_windows

log = logging.getLogger(__name__)

_STAGES = {"walk": 1, "train": 2, "eval-sim": 3, "eval-clf": 4}


def derive_seed(root: int, stage: str) -> int:
    """Stage seed from the root seed; stages never share a stream."""
    state = np.random.SeedSequence([int(root), _STAGES[stage]]).generate_state(1, np.uint64)
    return int(state[0])


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage} stage failed: {cause}")
        self.stage = stage


@dataclass
class PipelineConfig:
    edges: str | None = None
    labels: str | None = None
    out_dir: str | None = None
    seed: int = 0
    # walks
    strategy: str = "node2vec"
    p: float = 1.0
    q: float = 1.0
    walk_length: int = 80
    walks_per_node: int | None = None  # 10, or 1 with ARGEW
    context_size: int = 10
    # ARGEW
    argew: bool = False
    low: float = 1.0
    high: float = 9.0
    # SGNS
    dim: int = 128
    negatives: int = 1
    learning_rate: float = 0.01
    max_epochs: int = 10
    batch_size: int | None = None  # 1024, or 256 with ARGEW
    grad_reduction: str = "sum"
    # evaluation
    n_bins: int = 10
    nonedge_cap: int = 1_000_000
    l2_strength: float = 1.0
    splits: int = 10
    train_fraction: float = 0.5

    def walk_config(self) -> WalkConfig:
        wpn = self.walks_per_node if self.walks_per_node is not None else (1 if self.argew else 10)
        return WalkConfig(Strategy(self.strategy), self.p, self.q, self.walk_length, wpn,
                          self.context_size, derive_seed(self.seed, "walk"))

    def sgns_config(self) -> SgnsConfig:
        bs = self.batch_size if self.batch_size is not None else (256 if self.argew else 1024)
        return SgnsConfig(self.dim, self.negatives, self.learning_rate, self.max_epochs, bs,
                          derive_seed(self.seed, "train"), self.grad_reduction)


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(PipelineConfig)}


def coerce(name: str, raw: str):
    """Parse a string value for config field ``name``."""
    if name not in _FIELD_TYPES:
        raise ValueError(f"unknown config key {name!r}")
    kind = _FIELD_TYPES[name]
    if raw.strip().lower() in ("none", "") and "None" in kind:
        return None
    if kind.startswith("bool"):
        low = raw.strip().lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"{name}: expected a boolean, got {raw!r}")
        return low in ("true", "1", "yes")
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw.strip()


def load_config(path, base: PipelineConfig | None = None) -> PipelineConfig:
    """Flat ``key = value`` file; '#' starts a comment; unknown keys are errors."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        try:
            values[key.strip()] = coerce(key.strip(), val)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return dataclasses.replace(base or PipelineConfig(), **values)


@dataclass
class PipelineResult:
    corpus: Corpus
    embeddings: EmbeddingSet
    train_report: TrainReport
    similarity: SimilarityBinReport
    classification: ClassificationReport | None = None
    files: list[Path] = field(default_factory=list)


def build_corpus(g: WeightedGraph, config: PipelineConfig) -> tuple[Corpus, Corpus]:
    """(plain windows, training corpus); they coincide unless ARGEW is on."""
    wc = config.walk_config()
    windows = [w for walk in sample_walks(g, wc) for w in split_windows(walk, wc.context_size)]
    plain = Corpus.from_windows(windows)
    if not config.argew:
        return plain, plain
    return plain, augment_corpus(g, windows, config.low, config.high)


def run_pipeline(
    config: PipelineConfig,
    graph: WeightedGraph | None = None,
    labels: Sequence | None = None,
    names: list[str] | None = None,
) -> PipelineResult:
    """Run every stage; ``graph``/``labels`` override the configured file paths."""
    try:
        if graph is None:
            if config.edges is None:
                raise ValueError("no graph given and no edge list configured")
            graph, id_map = io.load_edge_list(config.edges)
            names = list(id_map)
            if labels is None and config.labels is not None:
                labels = io.load_labels(config.labels, id_map)
        elif labels is None and config.labels is not None:
            raise ValueError("labels file given without an edge list to map node ids")
        if labels is not None and len(labels) != graph.node_count:
            raise ValueError(f"{len(labels)} labels for {graph.node_count} nodes")
    except Exception as exc:
        raise PipelineError("load", exc) from exc

    stage = "walk"
    try:
        plain, corpus = build_corpus(graph, config)
        log.info("corpus: %d windows, %d after augmentation", plain.total(), corpus.total())
        stage = "train"
        emb, report = train(corpus, graph.node_count, config.context_size, config.sgns_config())
        stage = "eval-sim"
        sim = similarity_by_weight_bin(graph, emb.center, config.n_bins, config.nonedge_cap,
                                       derive_seed(config.seed, "eval-sim"))
        clf = None
        if labels is not None:
            stage = "eval-clf"
            clf = classification_protocol(emb.center, list(labels), derive_seed(config.seed, "eval-clf"),
                                          config.splits, config.train_fraction, config.l2_strength)
    except Exception as exc:
        raise PipelineError(stage, exc) from exc

    result = PipelineResult(corpus, emb, report, sim, clf)
    if config.out_dir is not None:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        targets = {
            "windows.tsv": lambda p: io.save_corpus(p, plain),
            "corpus.tsv": lambda p: io.save_corpus(p, corpus),
            "embeddings.txt": lambda p: io.save_embeddings(p, emb.center, names),
            "similarity.tsv": lambda p: io.write_text(p, io.similarity_tsv(sim)),
        }
        if clf is not None:
            targets["classification.tsv"] = lambda p: io.write_text(p, io.classification_tsv(clf))
        for fname, write in targets.items():
            write(out / fname)
            result.files.append(out / fname)
    return result


SWEEP_PARAMS = {"p": float, "q": float, "dim": int, "context_size": int}


@dataclass
class SweepSpec:
    parameter: str
    values: list

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}; choose from {sorted(SWEEP_PARAMS)}")
        kind = SWEEP_PARAMS[self.parameter]
        self.values = [kind(v) for v in self.values]
        for v in self.values:
            if v <= 0 or (self.parameter == "context_size" and v < 2):
                raise ValueError(f"illegal value {v} for {self.parameter}")


@dataclass
class SweepRow:
    value: float
    micro_without: float | None
    micro_with: float | None


def run_sweep(spec: SweepSpec, config: PipelineConfig, graph=None, labels=None) -> list[SweepRow]:
    """Micro F1 per parameter value, with and without ARGEW; failed cells are None."""
    rows = []
    for value in spec.values:
        cells = []
        for use_argew in (False, True):
            cfg = dataclasses.replace(config, out_dir=None, argew=use_argew, **{spec.parameter: value})
            try:
                res = run_pipeline(cfg, graph, labels)
                if res.classification is None:
                    raise ValueError("sweep needs labels")
                cells.append(res.classification.micro_f1)
            except Exception as exc:  # noqa: BLE001 - record and continue
                log.warning("sweep %s=%s argew=%s failed: %s", spec.parameter, value, use_argew, exc)
                cells.append(None)
        rows.append(SweepRow(value, *cells))
    return rows


def sweep_tsv(spec: SweepSpec, rows: list[SweepRow]) -> str:
    def cell(x):
        return "FAIL" if x is None else format(x, ".6f")

    lines = [f"{spec.parameter}\tmicro_f1_node2vec\tmicro_f1_argew"]
    lines += [f"{r.value!r}\t{cell(r.micro_without)}\t{cell(r.micro_with)}" for r in rows]
    return "\n".join(lines) + "\n"
