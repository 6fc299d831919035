"""Skip-gram with negative sampling, trained from scratch with seeded mini-batch SGD."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from argew.augment import Corpus


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 128
    negatives_per_positive: int = 1
    learning_rate: float = 0.01
    max_epochs: int = 10
    batch_size: int = 1024
    seed: int = 0
    reduction: str = "sum"
    early_stopping: bool = True

    def __post_init__(self):
        if self.dim < 1 or self.negatives_per_positive < 1 or self.max_epochs < 1 or self.batch_size < 1:
            raise ValueError("dim, negatives_per_positive, max_epochs and batch_size must be >= 1")
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.reduction not in ("sum", "mean"):
            raise ValueError(f"reduction must be 'sum' or 'mean', got {self.reduction!r}")


@dataclass
class EmbeddingSet:
    center: np.ndarray
    context: np.ndarray

    @property
    def vectors(self) -> np.ndarray:
        """Node embeddings (the center matrix)."""
        return self.center


@dataclass
class TrainReport:
    epoch_losses: list[float] = field(default_factory=list)
    epochs_run: int = 0
    stopped_early: bool = False


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def init_embeddings(n: int, config: SgnsConfig) -> EmbeddingSet:
    if n < 1:
        raise ValueError(f"need at least one node, got {n}")
    rng = np.random.default_rng([config.seed, 0])
    half = 0.5 / config.dim
    center = rng.uniform(-half, half, size=(n, config.dim))
    return EmbeddingSet(center=center, context=np.zeros((n, config.dim)))


def pair_loss(center_vec, context_vec, negative_vecs):
    """SGNS loss of one positive pair and its negatives, with analytic gradients.

    loss = -log sig(c.u) - sum_k log sig(-c.n_k)

    Returns ``(loss, grad_center, grad_context, grad_negatives)``; the last
    has one row per negative.
    """
    c = np.asarray(center_vec, dtype=float)
    u = np.asarray(context_vec, dtype=float)
    negs = np.asarray(negative_vecs, dtype=float).reshape(-1, c.shape[0]) if len(negative_vecs) else np.zeros((0, c.shape[0]))
    if c.ndim != 1 or u.shape != c.shape or negs.shape[1] != c.shape[0]:
        raise ValueError(f"dimension mismatch: center {c.shape}, context {u.shape}, negatives {negs.shape}")
    s_pos = c @ u
    s_neg = negs @ c
    loss = np.logaddexp(0.0, -s_pos) + np.logaddexp(0.0, s_neg).sum()
    g_pos = _sigmoid(s_pos) - 1.0
    g_neg = _sigmoid(s_neg)
    grad_c = g_pos * u + g_neg @ negs
    grad_u = g_pos * c
    grad_n = g_neg[:, None] * c[None, :]
    return float(loss), grad_c, grad_u, grad_n


def sample_negatives(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need at least one node, got {n}")
    return rng.integers(0, n, size=k)


def corpus_pairs(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    """Expand every entry into (first node, later node) pairs, ``count`` times over."""
    centers, contexts = [], []
    for window, count in corpus.entries:
        if len(window) < 2:
            raise ValueError(f"corpus window {window} is shorter than 2")
        rest = np.asarray(window[1:], dtype=np.int64)
        centers.append(np.full(len(rest) * count, window[0], dtype=np.int64))
        contexts.append(np.tile(rest, count))
    return np.concatenate(centers), np.concatenate(contexts)


def _sgd_batch(emb: EmbeddingSet, ci, cj, neg, step: float) -> float:
    C = emb.center[ci]
    U = emb.context[cj]
    N = emb.context[neg]  # (B, k, d)
    s_pos = np.einsum("bd,bd->b", C, U)
    s_neg = np.einsum("bd,bkd->bk", C, N)
    loss = np.logaddexp(0.0, -s_pos) + np.logaddexp(0.0, s_neg).sum(axis=1)

    g_pos = _sigmoid(s_pos) - 1.0
    g_neg = _sigmoid(s_neg)
    d_center = g_pos[:, None] * U + np.einsum("bk,bkd->bd", g_neg, N)
    d_context = g_pos[:, None] * C
    d_neg = g_neg[:, :, None] * C[:, None, :]

    np.add.at(emb.center, ci, -step * d_center)
    np.add.at(emb.context, cj, -step * d_context)
    np.add.at(emb.context, neg.ravel(), -step * d_neg.reshape(-1, C.shape[1]))
    return float(loss.sum())


def train(corpus: Corpus, n: int, context_size: int, config: SgnsConfig) -> tuple[EmbeddingSet, TrainReport]:
    """Train SGNS embeddings on ``corpus`` over ``n`` nodes.

    Each epoch reshuffles all positive pairs, redraws uniform negatives and
    runs mini-batch SGD. Training stops after the first epoch whose mean
    per-pair loss is not smaller than the previous one.
    """
    if not corpus.entries:
        raise ValueError("cannot train on an empty corpus")
    for window, _ in corpus.entries:
        if len(window) > context_size:
            raise ValueError(f"window {window} longer than context_size {context_size}")
    centers, contexts = corpus_pairs(corpus)
    if centers.max() >= n:
        raise ValueError(f"corpus references node {centers.max()} but n = {n}")

    emb = init_embeddings(n, config)
    report = TrainReport()
    k, bs = config.negatives_per_positive, config.batch_size
    total = len(centers)
    for epoch in range(config.max_epochs):
        rng = np.random.default_rng([config.seed, 1, epoch])
        order = rng.permutation(total)
        negatives = sample_negatives(n, total * k, rng).reshape(total, k)
        loss_sum = 0.0
        for start in range(0, total, bs):
            idx = order[start:start + bs]
            step = config.learning_rate if config.reduction == "sum" else config.learning_rate / len(idx)
            loss_sum += _sgd_batch(emb, centers[idx], contexts[idx], negatives[start:start + bs], step)
        if not (np.isfinite(emb.center).all() and np.isfinite(emb.context).all() and np.isfinite(loss_sum)):
            raise FloatingPointError(f"non-finite embeddings or loss after epoch {epoch}")
        mean_loss = loss_sum / total
        report.epochs_run = epoch + 1
        previous = report.epoch_losses[-1] if report.epoch_losses else None
        report.epoch_losses.append(mean_loss)
        if config.early_stopping and previous is not None and mean_loss >= previous:
            report.stopped_early = True
            break
    return emb, report
