"""Text file formats: edge lists, labels, corpora, embeddings and TSV reports."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from argew.augment import Corpus
from argew.evaluation import ClassificationReport, CoappearanceTable, SimilarityBinReport
from argew.graph import GraphError, WeightedGraph, build_graph


class FormatError(ValueError):
    pass


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield lineno, line


def load_edge_list(path) -> tuple[WeightedGraph, dict[str, int]]:
    """Read ``source target weight`` lines; ids are mapped to 0.. in first-appearance order."""
    id_map: dict[str, int] = {}
    seen: dict[tuple[int, int], tuple[float, int]] = {}
    edges = []
    for lineno, line in _lines(path):
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"{path}:{lineno}: expected 3 fields (source target weight), got {len(parts)}")
        a, b, raw_w = parts
        try:
            w = float(raw_w)
        except ValueError:
            raise FormatError(f"{path}:{lineno}: non-numeric weight {raw_w!r}") from None
        u = id_map.setdefault(a, len(id_map))
        v = id_map.setdefault(b, len(id_map))
        if u == v:
            raise FormatError(f"{path}:{lineno}: self-loop on node {a!r}")
        if not (w > 0 and np.isfinite(w)):
            raise FormatError(f"{path}:{lineno}: edge ({a}, {b}) has non-positive weight {raw_w}")
        key = (min(u, v), max(u, v))
        if key in seen and seen[key][0] != w:
            raise FormatError(
                f"{path}:{lineno}: edge ({a}, {b}) conflicts with weight {seen[key][0]} from line {seen[key][1]}"
            )
        seen.setdefault(key, (w, lineno))
        edges.append((u, v, w))
    try:
        g = build_graph(edges, node_count=len(id_map))
    except GraphError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return g, id_map


def write_edge_list(path, g: WeightedGraph, names: list[str] | None = None) -> None:
    names = names or [str(i) for i in range(g.node_count)]
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, w in g.edges():
            fh.write(f"{names[u]}\t{names[v]}\t{w!r}\n")


def load_labels(path, id_map: dict[str, int]) -> list[str]:
    labels: list[str | None] = [None] * len(id_map)
    where: dict[str, int] = {}
    for lineno, line in _lines(path):
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise FormatError(f"{path}:{lineno}: expected 'node<TAB>label'")
        node, label = parts[0].strip(), parts[1].strip()
        if node not in id_map:
            raise FormatError(f"{path}:{lineno}: unknown node {node!r}")
        if node in where:
            raise FormatError(f"{path}:{lineno}: node {node!r} already labeled on line {where[node]}")
        where[node] = lineno
        labels[id_map[node]] = label
    missing = [name for name, i in id_map.items() if labels[i] is None]
    if missing:
        raise FormatError(f"{path}: no label for node {missing[0]!r}" + (f" (+{len(missing) - 1} more)" if len(missing) > 1 else ""))
    return labels  # type: ignore[return-value]


def write_labels(path, labels: list[str], names: list[str] | None = None) -> None:
    names = names or [str(i) for i in range(len(labels))]
    with open(path, "w", encoding="utf-8") as fh:
        for name, lab in zip(names, labels):
            fh.write(f"{name}\t{lab}\n")


def save_corpus(path, corpus: Corpus) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for window, count in corpus.entries:
            fh.write(f"{count}\t{' '.join(map(str, window))}\n")


def load_corpus(path) -> Corpus:
    corpus = Corpus()
    for lineno, line in _lines(path):
        head, _, body = line.partition("\t")
        try:
            count = int(head)
            window = [int(t) for t in body.split()]
        except ValueError:
            raise FormatError(f"{path}:{lineno}: non-integer token") from None
        if count < 1:
            raise FormatError(f"{path}:{lineno}: count must be >= 1, got {count}")
        if not window:
            raise FormatError(f"{path}:{lineno}: empty node list")
        if min(window) < 0:
            raise FormatError(f"{path}:{lineno}: negative node id")
        corpus.add(window, count)
    return corpus


def save_embeddings(path, vectors: np.ndarray, names: list[str] | None = None) -> None:
    vectors = np.asarray(vectors, dtype=float)
    n, d = vectors.shape
    names = names or [str(i) for i in range(n)]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{n} {d}\n")
        for name, row in zip(names, vectors.tolist()):
            fh.write(name + " " + " ".join(format(x, ".17g") for x in row) + "\n")


def load_embeddings(path) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise FormatError(f"{path}:1: header must be 'n d'")
        n, d = int(header[0]), int(header[1])
        names, rows = [], []
        for lineno, raw in enumerate(fh, start=2):
            parts = raw.split()
            if not parts:
                continue
            if len(parts) - 1 != d:
                raise FormatError(f"{path}:{lineno}: row {parts[0]!r} has {len(parts) - 1} values, header says {d}")
            names.append(parts[0])
            rows.append([float(x) for x in parts[1:]])
    if len(rows) != n:
        raise FormatError(f"{path}: header says {n} rows, found {len(rows)}")
    return names, np.array(rows, dtype=float).reshape(n, d)


def order_embeddings(names: list[str], vectors: np.ndarray, id_map: dict[str, int]) -> np.ndarray:
    """Reorder loaded rows into the graph's dense id order."""
    if set(names) != set(id_map):
        extra = sorted(set(names) ^ set(id_map))
        raise FormatError(f"embedding ids do not match the graph (e.g. {extra[0]!r})")
    out = np.empty_like(vectors)
    for name, row in zip(names, vectors):
        out[id_map[name]] = row
    return out


def _num(x: float) -> str:
    return format(x, ".6f") if np.isfinite(x) else "nan"


def similarity_tsv(report: SimilarityBinReport) -> str:
    lines = ["bin\tlow\thigh\tpairs\tmedian_cosine\tmean_cosine"]
    for i, b in enumerate(report.bins):
        lines.append(f"{i}\t{b.low!r}\t{b.high!r}\t{b.count}\t{_num(b.median)}\t{_num(b.mean)}")
    return "\n".join(lines) + "\n"


def classification_tsv(report: ClassificationReport) -> str:
    lines = ["split\tmicro_f1\tmacro_f1"]
    lines += [f"{i}\t{_num(mi)}\t{_num(ma)}" for i, (mi, ma) in enumerate(report.splits)]
    lines.append(f"mean\t{_num(report.micro_f1)}\t{_num(report.macro_f1)}")
    return "\n".join(lines) + "\n"


def coappearance_tsv(table: CoappearanceTable) -> str:
    lines = ["type\t" + "\t".join(table.types)]
    for first, row in table.rows.items():
        lines.append(first + "\t" + "\t".join(_num(row[t]) for t in table.types))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
