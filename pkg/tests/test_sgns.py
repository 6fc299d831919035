import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from argew.augment import Corpus
from argew.evaluation import cosine
from argew.sgns import (
    SgnsConfig,
    corpus_pairs,
    init_embeddings,
    pair_loss,
    sample_negatives,
    train,
)
from argew.walks import WalkConfig, sample_walks, split_windows

from conftest import two_cliques


def finite_difference(f, x, h=1e-5):
    grad = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e.flat[i] = h
        grad.flat[i] = (f(x + e) - f(x - e)) / (2 * h)
    return grad


def rel_err(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(a), np.linalg.norm(b), 1e-8)


def test_init_embeddings():
    cfg = SgnsConfig(dim=4, seed=5)
    emb = init_embeddings(3, cfg)
    assert emb.center.shape == emb.context.shape == (3, 4)
    assert not emb.context.any()
    assert np.all(np.abs(emb.center) <= 0.5 / 4)
    assert np.array_equal(emb.center, init_embeddings(3, cfg).center)


def test_pair_loss_at_zero():
    z = np.zeros(3)
    loss, gc, gu, gn = pair_loss(z, z, [z])
    assert loss == pytest.approx(2 * np.log(2))
    assert not gc.any() and not gu.any() and not gn.any()


def test_pair_loss_saturates():
    c = np.full(4, 10.0)
    loss, *_ = pair_loss(c, c, [])
    assert 0 <= loss < 1e-100


def test_pair_loss_dimension_mismatch():
    with pytest.raises(ValueError):
        pair_loss(np.zeros(3), np.zeros(4), [])
    with pytest.raises(ValueError):
        pair_loss(np.zeros(3), np.zeros(3), [np.zeros(2)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 8, 64]), st.integers(0, 4))
def test_gradients_match_finite_differences(seed, d, k):
    rng = np.random.default_rng(seed)
    c, u = rng.normal(0, 0.5, d), rng.normal(0, 0.5, d)
    negs = rng.normal(0, 0.5, (k, d))
    _, gc, gu, gn = pair_loss(c, u, negs)
    assert rel_err(gc, finite_difference(lambda x: pair_loss(x, u, negs)[0], c)) <= 1e-4
    assert rel_err(gu, finite_difference(lambda x: pair_loss(c, x, negs)[0], u)) <= 1e-4
    if k:
        fd = finite_difference(lambda x: pair_loss(c, u, x)[0], negs)
        assert rel_err(gn, fd) <= 1e-4


def test_sample_negatives():
    assert set(sample_negatives(1, 50, np.random.default_rng(0)).tolist()) == {0}
    draws = sample_negatives(10, 100_000, np.random.default_rng(1))
    freq = np.bincount(draws, minlength=10) / draws.size
    assert np.all(np.abs(freq - 0.1) <= 0.01)
    assert np.array_equal(sample_negatives(10, 20, np.random.default_rng(2)),
                          sample_negatives(10, 20, np.random.default_rng(2)))


def test_corpus_pairs_respect_counts():
    corpus = Corpus([([0, 1, 2], 3), ([2, 0], 1)])
    centers, contexts = corpus_pairs(corpus)
    assert len(centers) == 3 * 2 + 1
    assert sorted(zip(centers.tolist(), contexts.tolist())) == sorted([(0, 1), (0, 2)] * 3 + [(2, 0)])


@pytest.mark.parametrize("seed", range(4))
def test_train_smoke(seed):
    # half the negatives hit the context node, so single epochs are noisy; compare the tail
    corpus = Corpus([([0, 1], 1)])
    cfg = SgnsConfig(dim=8, max_epochs=50, batch_size=1, learning_rate=0.1, seed=seed, early_stopping=False)
    emb, report = train(corpus, 2, 2, cfg)
    assert report.epochs_run == 50
    assert all(np.isfinite(report.epoch_losses))
    assert np.mean(report.epoch_losses[-10:]) < report.epoch_losses[0]
    assert np.isfinite(emb.center).all()


def test_train_budget_exhaustion():
    _, report = train(Corpus([([0, 1, 2], 1)]), 3, 3, SgnsConfig(dim=4, max_epochs=1))
    assert report.epochs_run == 1 and not report.stopped_early


def test_train_early_stopping_flag():
    corpus = Corpus([([0, 1], 1)])
    _, report = train(corpus, 2, 2, SgnsConfig(dim=2, max_epochs=200, batch_size=1, learning_rate=0.5))
    assert report.epochs_run <= 200
    losses = report.epoch_losses
    fired = any(b >= a for a, b in zip(losses, losses[1:]))
    assert report.stopped_early == fired
    if fired:
        assert losses[-1] >= losses[-2]


def test_train_rejects_empty_and_long_windows():
    with pytest.raises(ValueError):
        train(Corpus(), 2, 2, SgnsConfig())
    with pytest.raises(ValueError):
        train(Corpus([([0, 1, 2], 1)]), 3, 2, SgnsConfig())


def test_train_deterministic():
    g, _ = two_cliques(4)
    cfg = WalkConfig(walk_length=10, walks_per_node=2, context_size=3, seed=1)
    corpus = Corpus.from_windows(w for walk in sample_walks(g, cfg) for w in split_windows(walk, 3))
    a, _ = train(corpus, g.node_count, 3, SgnsConfig(dim=8, seed=9, batch_size=16))
    b, _ = train(corpus, g.node_count, 3, SgnsConfig(dim=8, seed=9, batch_size=16))
    assert np.array_equal(a.center, b.center) and np.array_equal(a.context, b.context)


def test_two_cliques_homophily():
    g, _ = two_cliques(3)
    cfg = WalkConfig(walk_length=20, walks_per_node=10, context_size=4, seed=0)
    corpus = Corpus.from_windows(w for walk in sample_walks(g, cfg) for w in split_windows(walk, 4))
    emb, _ = train(corpus, 6, 4, SgnsConfig(dim=16, seed=0, batch_size=64))
    within = [cosine(emb.center[a], emb.center[b]) for base in (0, 3) for a in range(base, base + 3)
              for b in range(a + 1, base + 3)]
    across = [cosine(emb.center[a], emb.center[b]) for a in range(3) for b in range(3, 6)]
    assert np.mean(within) > np.mean(across)
