import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from argew.evaluation import (
    classification_protocol,
    coappearance_distribution,
    cosine,
    f1_scores,
    similarity_by_weight_bin,
    stratified_split,
    train_ovr_logreg,
)
from argew.graph import GraphError, build_graph
from argew.roles import build_roles_graph


def confusion_f1(true, pred):
    """Brute-force F1 from an explicit confusion matrix."""
    from fractions import Fraction

    cats = sorted(set(true) | set(pred))
    m = {(a, b): 0 for a in cats for b in cats}
    for t, p in zip(true, pred):
        m[(t, p)] += 1
    f1s = []
    for c in cats:
        tp = m[(c, c)]
        fp = sum(m[(o, c)] for o in cats if o != c)
        fn = sum(m[(c, o)] for o in cats if o != c)
        f1s.append(Fraction(0) if 2 * tp + fp + fn == 0 else Fraction(2 * tp, 2 * tp + fp + fn))
    micro = Fraction(sum(m[(c, c)] for c in cats), len(true))
    return float(micro), float(sum(f1s) / len(f1s))


def test_cosine():
    assert cosine([1, 0], [1, 0]) == 1.0
    assert cosine([1, 0], [0, 1]) == 0.0
    assert cosine([1, 0], [-1, 0]) == -1.0
    with pytest.raises(ValueError):
        cosine([0, 0], [1, 0])


def test_f1_examples():
    assert f1_scores([0, 1, 2], [0, 1, 2]) == (1.0, 1.0)
    micro, macro = f1_scores([0, 0, 1, 1], [0, 1, 1, 1])
    assert micro == 0.75 and macro == pytest.approx((2 / 3 + 0.8) / 2)
    micro, macro = f1_scores([0, 0, 1, 1], [1, 1, 1, 1])
    assert micro == 0.5 and macro == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        f1_scores([0], [0, 1])


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=50))
def test_f1_matches_confusion_matrix(pairs):
    true, pred = zip(*pairs)
    assert f1_scores(true, pred) == confusion_f1(true, pred)
    assert f1_scores(true, pred)[0] == np.mean(np.array(true) == np.array(pred))


def test_similarity_single_weight():
    g = build_graph([(0, 1, 2.0), (1, 2, 2.0), (2, 3, 2.0)])
    vecs = np.random.default_rng(0).normal(size=(4, 3))
    r = similarity_by_weight_bin(g, vecs, n_bins=4)
    assert [b.count for b in r.bins[1:]] == [0, 0, 0, 3]
    assert r.bins[0].count == 6 - 3


def test_similarity_roles_bins():
    g = build_roles_graph()
    vecs = np.random.default_rng(0).normal(size=(19, 8))
    r = similarity_by_weight_bin(g, vecs, n_bins=3)
    assert [b.count for b in r.bins] == [19 * 18 // 2 - 54, 12, 12, 30]
    assert [(b.low, b.high) for b in r.bins[1:]] == [(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]


def test_similarity_nonedge_cap_sampling():
    g = build_roles_graph()
    vecs = np.random.default_rng(0).normal(size=(19, 8))
    a = similarity_by_weight_bin(g, vecs, 3, nonedge_cap=20, seed=4)
    b = similarity_by_weight_bin(g, vecs, 3, nonedge_cap=20, seed=4)
    assert a.bins[0].count == 20 and a == b


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_bin_medians_within_range(seed):
    rng = np.random.default_rng(seed)
    g = build_roles_graph()
    vecs = rng.normal(size=(19, 5))
    r = similarity_by_weight_bin(g, vecs, 3)
    unit = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    for b, w in zip(r.bins[1:], (1.0, 2.0, 3.0)):
        cos = [unit[u] @ unit[v] for u, v, x in g.edges() if x == w]
        assert min(cos) - 1e-12 <= b.median <= max(cos) + 1e-12
        assert -1 <= b.mean <= 1


def test_similarity_edgeless():
    with pytest.raises(GraphError):
        similarity_by_weight_bin(build_graph([], node_count=3), np.ones((3, 2)), 2)


def test_stratified_split():
    labels = ["a"] * 4 + ["b"] * 4
    train, test = stratified_split(labels, 0.5, seed=1)
    assert sorted(labels[i] for i in train) == ["a", "a", "b", "b"]
    odd_train, odd_test = stratified_split(["x"] * 5, 0.5, seed=1)
    assert len(odd_train) == 3 and len(odd_test) == 2
    again = stratified_split(labels, 0.5, seed=1)
    assert np.array_equal(train, again[0]) and np.array_equal(test, again[1])
    with pytest.raises(ValueError):
        stratified_split(["a", "a", "b"], 0.5, 0)


@given(st.lists(st.sampled_from("abcd"), min_size=2, max_size=40), st.floats(0.1, 0.9), st.integers(0, 100))
def test_split_is_partition(labels, frac, seed):
    from collections import Counter

    if min(Counter(labels).values()) < 2:
        return
    train, test = stratified_split(labels, frac, seed)
    assert set(train) | set(test) == set(range(len(labels)))
    assert not set(train) & set(test)
    for lab, size in Counter(labels).items():
        k = sum(labels[i] == lab for i in train)
        assert abs(k - size * frac) <= 1


def test_logreg_separable_blobs():
    rng = np.random.default_rng(0)
    x = np.vstack([rng.normal(5, 1, (10, 2)), rng.normal(-5, 1, (10, 2))])
    y = [0] * 10 + [1] * 10
    model = train_ovr_logreg(x, y, range(20))
    assert model.predict(x) == y


def test_logreg_heavy_l2():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(30, 4))
    y = [i % 3 for i in range(30)]
    model = train_ovr_logreg(x, y, range(30), l2_strength=1e6)
    assert np.all(np.linalg.norm(model.weights, axis=1) < 0.01)


def test_logreg_deterministic_and_guards():
    x = np.arange(12.0).reshape(6, 2)
    y = [0, 0, 0, 1, 1, 1]
    a = train_ovr_logreg(x, y, range(6))
    b = train_ovr_logreg(x, y, range(6))
    assert np.array_equal(a.weights, b.weights)
    with pytest.raises(ValueError):
        train_ovr_logreg(x, y, [0, 1, 2])


def test_logreg_tie_goes_to_first_class():
    from argew.evaluation import OvrLogisticRegression

    model = OvrLogisticRegression(["a", "b"], np.zeros((2, 2)), np.zeros(2))
    assert model.predict(np.ones((3, 2))) == ["a", "a", "a"]


def test_protocol_one_hot_features():
    labels = [i % 3 for i in range(30)]
    report = classification_protocol(np.eye(3)[labels], labels, seed=0)
    assert report.micro_f1 == 1.0 and len(report.splits) == 10
    assert all(s == (1.0, 1.0) for s in report.splits)
    with pytest.raises(ValueError):
        classification_protocol(np.eye(3)[labels], [0] * 30, seed=0)


TYPES = {4: "bridge", 0: "internal", 1: "internal", 5: "etc"}


def test_coappearance_examples():
    t = coappearance_distribution([[4, 0, 1]], TYPES.get, types=["bridge", "internal", "etc"])
    assert t.rows["bridge"] == {"bridge": 0.0, "etc": 0.0, "internal": 1.0}
    assert coappearance_distribution([[4, 0, 1]], TYPES.get).types == ["bridge", "internal"]
    t = coappearance_distribution([[4, 0, 1], [0, 4, 5]], TYPES.get)
    assert t.rows["internal"]["bridge"] == 0.5 and t.rows["internal"]["etc"] == 0.5


def test_coappearance_counts_multiplicity():
    t = coappearance_distribution([([0, 4], 3), ([0, 5], 1)], TYPES.get)
    assert t.rows["internal"]["bridge"] == 0.75


def test_coappearance_empty():
    with pytest.raises(ValueError):
        coappearance_distribution([], TYPES.get)


@given(st.lists(st.lists(st.sampled_from([0, 1, 4, 5]), min_size=2, max_size=5), min_size=1, max_size=20))
def test_coappearance_rows_sum_to_one(windows):
    t = coappearance_distribution(windows, TYPES.get)
    for row in t.rows.values():
        assert abs(sum(row.values()) - 1) <= 1e-9
        assert min(row.values()) >= 0
