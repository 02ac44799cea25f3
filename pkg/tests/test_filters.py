import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_base
from oracles import bits, relief_oracle
from featcons.errors import (
    ConfigError,
    DegenerateBase,
    NotBinaryLabels,
    NumericFeatureUnsupported,
    UnknownFeature,
)
from featcons.example_base import ExampleBase, Kind
from featcons.filters import (
    FeatureScore,
    FeatureSubset,
    ScoreMethod,
    SelectionPolicy,
    chi_squared,
    info_gain,
    relief_score,
    relief_weights,
    score_features,
    select_features,
)
from featcons.rng import SplitMix64


def nominal(rows, labels, names=None, label_set=None):
    names = names or [f"f{i}" for i in range(len(rows[0]))]
    return ExampleBase.from_rows(
        [(n, Kind.NOMINAL) for n in names], rows, labels, label_set=label_set
    )


def test_info_gain_constant_feature():
    base = nominal([["a"]] * 6, list("++-+--"))
    assert info_gain(base, "f0") == 0.0


def test_info_gain_perfect_predictor():
    base = nominal([["x"], ["x"], ["y"], ["y"]], list("++--"))
    assert info_gain(base, "f0") == 1.0


def test_info_gain_independent():
    base = nominal([["a"], ["a"], ["b"], ["b"]], list("+-+-"))
    assert info_gain(base, "f0") == 0.0


def test_info_gain_hand_value():
    # labels 3+/1-; feature splits {+,+} | {+,-}
    base = nominal([["a"], ["a"], ["b"], ["b"]], list("+++-"))
    expected = bits([3, 1]) - 0.5 * bits([1, 1])
    assert info_gain(base, "f0") == pytest.approx(expected, abs=1e-15)


def test_chi_squared_values():
    perfect = nominal([["x"]] * 4 + [["y"]] * 4, list("++++----"))
    assert chi_squared(perfect, "f0") == 8.0
    assert chi_squared(nominal([["a"], ["a"], ["b"], ["b"]], list("+-+-")), "f0") == 0.0
    assert chi_squared(nominal([["a"]] * 5, list("++-+-")), "f0") == 0.0
    # 2x2 table [[3,1],[1,3]]: expected 2 everywhere, sum (1^2/2)*4 = 2
    table = nominal([["a"]] * 4 + [["b"]] * 4, list("+++-+---"))
    assert chi_squared(table, "f0") == 2.0


def test_numeric_feature_rejected_by_nominal_scorers():
    base = ExampleBase.from_rows([("x", Kind.NUMERIC)], [[1.0], [2.0]], ["a", "b"])
    with pytest.raises(NumericFeatureUnsupported):
        info_gain(base, "x")
    with pytest.raises(NumericFeatureUnsupported):
        chi_squared(base, "x")
    with pytest.raises(UnknownFeature):
        info_gain(base, "nope")


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(0, 2**32),
    n=st.integers(2, 40),
    k=st.integers(2, 4),
    rnd=st.randoms(use_true_random=False),
)
def test_scores_invariant_under_reordering_and_doubling(seed, n, k, rnd):
    base = random_base(seed, n, 1, k)
    rows = [ex.values for ex in base.examples]
    labels = base.labels
    order = list(range(n))
    rnd.shuffle(order)
    k_set = base.schema.labels
    shuffled = nominal([rows[i] for i in order], [labels[i] for i in order], label_set=k_set)
    doubled = nominal(rows * 2, labels * 2, label_set=k_set)
    ig, chi = info_gain(base, "f0"), chi_squared(base, "f0")
    assert 0.0 <= ig <= bits(list(_counts(labels)))
    assert info_gain(shuffled, "f0") == ig
    assert info_gain(doubled, "f0") == ig
    assert chi_squared(shuffled, "f0") == chi
    assert chi_squared(doubled, "f0") == 2 * chi


def _counts(labels):
    out = {}
    for lab in labels:
        out[lab] = out.get(lab, 0) + 1
    return out.values()


@settings(max_examples=60, deadline=None)
@given(
    row_counts=st.lists(st.integers(1, 4), min_size=1, max_size=4),
    col_counts=st.lists(st.integers(1, 4), min_size=2, max_size=3),
)
def test_product_form_tables_score_zero(row_counts, col_counts):
    rows, labels = [], []
    for i, r in enumerate(row_counts):
        for j, c in enumerate(col_counts):
            rows += [[f"v{i}"]] * (r * c)
            labels += [f"l{j}"] * (r * c)
    base = nominal(rows, labels)
    assert info_gain(base, "f0") == 0.0
    assert chi_squared(base, "f0") == 0.0


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 40), k=st.integers(2, 4))
def test_determining_feature_scores_label_entropy(seed, n, k):
    base = random_base(seed, n, 0, k)
    labels = base.labels
    # a feature that is a (many-to-one) function of the label, refined per example
    rows = [[f"{lab}-{i % 2}"] for i, lab in enumerate(labels)]
    det = nominal(rows, labels, label_set=base.schema.labels)
    assert info_gain(det, "f0") == bits(list(_counts(labels)))


def _indicator_base():
    rows = [[1.0]] * 5 + [[0.0]] * 5
    return ExampleBase.from_rows([("x", Kind.NUMERIC)], rows, ["+"] * 5 + ["-"] * 5)


def test_relief_indicator_scores_one():
    assert relief_score(_indicator_base(), "x", 10, 7) == 1.0


def test_relief_indicator_with_a_distractor():
    rng = SplitMix64(3)
    rows = [[1.0, rng.random()] for _ in range(10)] + [[0.0, rng.random()] for _ in range(10)]
    base = ExampleBase.from_rows(
        [("x", Kind.NUMERIC), ("noise", Kind.NUMERIC)], rows, ["+"] * 10 + ["-"] * 10
    )
    assert relief_score(base, "x", 20, 1) == 1.0


def test_relief_constant_feature():
    rows = [[1.0, 3.0], [0.0, 3.0], [1.0, 3.0], [0.0, 3.0]]
    base = ExampleBase.from_rows([("x", Kind.NUMERIC), ("k", Kind.NUMERIC)], rows, list("+-+-"))
    assert relief_score(base, "k", 8, 0) == 0.0


def test_relief_random_feature_is_small():
    rng = SplitMix64(2024)
    rows = [[rng.random()] for _ in range(200)]
    labels = ["+" if rng.randrange(2) else "-" for _ in range(200)]
    base = ExampleBase.from_rows([("r", Kind.NUMERIC)], rows, labels)
    score = relief_score(base, "r", 200, 11)
    assert abs(score) < 0.15


def test_relief_is_reproducible():
    base = random_base(5, 40, 3, 2, numeric=True)
    a = relief_weights(base, 25, 99)
    b = relief_weights(base, 25, 99)
    assert a == b
    assert all(-1.0 <= w <= 1.0 for w in a.values())


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 12), numeric=st.booleans())
def test_relief_matches_oracle(seed, n, numeric):
    base = random_base(seed, n, 3, 2, numeric=numeric)
    if len(set(base.labels)) < 2:
        return
    m = 2 * n
    rng = SplitMix64(seed)
    samples = [rng.randrange(n) for _ in range(m)]
    kinds = ["numeric" if numeric else "nominal"] * 3
    expected = relief_oracle([ex.values for ex in base.examples], base.labels, kinds, samples)
    got = relief_weights(base, m, seed)
    assert list(got.values()) == pytest.approx(expected, abs=1e-12)


def test_relief_rejects_bad_bases():
    three = random_base(1, 12, 2, 3)
    with pytest.raises(NotBinaryLabels):
        relief_score(three, "f0", 5, 0)
    one_sided = nominal([["a"], ["b"]], ["+", "+"], names=["f"], label_set=("+", "-"))
    with pytest.raises(DegenerateBase):
        relief_score(one_sided, "f", 5, 0)
    with pytest.raises(ConfigError):
        relief_weights(_indicator_base(), 0, 0)


def test_policy_validation():
    with pytest.raises(ConfigError):
        SelectionPolicy(ScoreMethod.INFO_GAIN, threshold=None, top_k=None)
    with pytest.raises(ConfigError):
        SelectionPolicy(ScoreMethod.INFO_GAIN, threshold=0.1, top_k=2)
    with pytest.raises(ConfigError):
        SelectionPolicy.by_rank("chi2", 0)
    with pytest.raises(ConfigError):
        SelectionPolicy.by_threshold("infogain", -0.1)
    assert SelectionPolicy.by_threshold("relief", -0.1).threshold == -0.1


def _scored(base, method, values, monkeypatch):
    fake = [FeatureScore(n, ScoreMethod(method), v) for n, v in zip(base.feature_names, values)]
    monkeypatch.setattr("featcons.filters.score_features", lambda *a, **k: fake)


def test_select_threshold(monkeypatch):
    base = random_base(0, 6, 2, 2)
    _scored(base, "infogain", [0.8, 0.0], monkeypatch)
    assert select_features(base, SelectionPolicy.by_threshold("infogain", 0.05)).features == ("f0",)
    _scored(base, "infogain", [0.0, 0.0], monkeypatch)
    assert select_features(base, SelectionPolicy.by_threshold("infogain", 0.05)).features == ()


def test_select_top_k_ties_follow_schema_order(monkeypatch):
    base = random_base(0, 6, 3, 2)
    _scored(base, "infogain", [0.5, 0.5, 0.7], monkeypatch)
    assert select_features(base, SelectionPolicy.by_rank("infogain", 1)).features == ("f2",)
    assert select_features(base, SelectionPolicy.by_rank("infogain", 2)).features == ("f0", "f2")
    _scored(base, "infogain", [0.5, 0.5, 0.1], monkeypatch)
    assert select_features(base, SelectionPolicy.by_rank("infogain", 1)).features == ("f0",)


def test_numeric_features_scored_on_temporary_bins():
    rows = [[v, random.Random(v).random()] for v in (1.0, 2.0, 3.0, 10.0, 11.0, 12.0)]
    base = ExampleBase.from_rows(
        [("x", Kind.NUMERIC), ("r", Kind.NUMERIC)], rows, list("AAABBB")
    )
    scores = {s.feature: s.value for s in score_features(base, "infogain")}
    assert scores["x"] == 1.0
    subset = select_features(base, SelectionPolicy())
    assert isinstance(subset, FeatureSubset)
    assert "x" in subset and list(subset) == [f for f in subset.features]
    chi = {s.feature: s.value for s in score_features(base, "chi2")}
    assert chi["x"] == 6.0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), method=st.sampled_from(["infogain", "chi2"]))
def test_selection_is_an_ordered_subset(seed, method):
    base = random_base(seed, 30, 4, 3)
    chosen = select_features(base, SelectionPolicy.by_threshold(method, 0.1)).features
    assert set(chosen) <= set(base.feature_names)
    assert list(chosen) == [f for f in base.feature_names if f in chosen]
