"""Per-feature relevance scores and subset selection.

Chi-squared and information gain need nominal domains. When a numeric
feature goes through :func:`score_features` or :func:`select_features` it is
scored on a throwaway MDL binning of that feature alone; calling
:func:`info_gain` or :func:`chi_squared` directly on a numeric feature is an
error.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from featcons.discretize import entropy, mdl_cuts, IntervalScheme
from featcons.errors import (
    ConfigError,
    DegenerateBase,
    NotBinaryLabels,
    NumericFeatureUnsupported,
)
from featcons.example_base import ExampleBase
from featcons.rng import SplitMix64


class ScoreMethod(str, Enum):
    CHI_SQUARED = "chi2"
    INFO_GAIN = "infogain"
    RELIEF = "relief"


@dataclass(frozen=True)
class FeatureScore:
    feature: str
    method: ScoreMethod
    value: float

    def to_dict(self) -> dict:
        return {"feature": self.feature, "method": self.method.value, "value": self.value}


@dataclass(frozen=True)
class SelectionPolicy:
    """Keep features scoring above ``threshold``, or the ``top_k`` best.

    Exactly one of the two must be set.
    """

    method: ScoreMethod = ScoreMethod.INFO_GAIN
    threshold: float | None = 0.0
    top_k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "method", ScoreMethod(self.method))
        if (self.threshold is None) == (self.top_k is None):
            raise ConfigError("selection policy needs exactly one of threshold / top_k")
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError("top_k must be >= 1")
        if (
            self.threshold is not None
            and self.threshold < 0
            and self.method is not ScoreMethod.RELIEF
        ):
            raise ConfigError(f"threshold must be >= 0 for {self.method.value}")

    @classmethod
    def by_threshold(cls, method, t: float) -> "SelectionPolicy":
        return cls(method, threshold=t)

    @classmethod
    def by_rank(cls, method, k: int) -> "SelectionPolicy":
        return cls(method, threshold=None, top_k=k)

    def to_dict(self) -> dict:
        if self.top_k is not None:
            return {"method": self.method.value, "mode": "top_k", "k": self.top_k}
        return {"method": self.method.value, "mode": "threshold", "threshold": self.threshold}


@dataclass(frozen=True)
class FeatureSubset:
    features: tuple[str, ...]
    policy: SelectionPolicy | None = None
    scores: tuple[FeatureScore, ...] = field(default=(), compare=False)

    def __iter__(self) -> Iterator[str]:
        return iter(self.features)

    def __len__(self) -> int:
        return len(self.features)

    def __contains__(self, name) -> bool:
        return name in self.features


def _nominal_feature(base: ExampleBase, feature: str) -> list:
    if base.schema.descriptor(feature).is_numeric:
        raise NumericFeatureUnsupported(feature)
    return base.column(feature)


def _contingency(column: Sequence, labels: Sequence) -> tuple[dict, Counter, Counter]:
    joint: dict = {}
    for v, lab in zip(column, labels):
        joint.setdefault(v, Counter())[lab] += 1
    rows = Counter({v: sum(c.values()) for v, c in joint.items()})
    cols = Counter(labels)
    return joint, rows, cols


def _product_form(joint, rows, cols, n) -> bool:
    return all(joint[v][lab] * n == rows[v] * cols[lab] for v in rows for lab in cols)


def _info_gain(column: Sequence, labels: Sequence) -> float:
    joint, rows, cols = _contingency(column, labels)
    n = len(labels)
    h_label = entropy(cols.values())
    # an empirically independent table scores exactly zero, whatever float
    # rounding the conditional sum below would produce
    if _product_form(joint, rows, cols, n):
        return 0.0
    h_cond = math.fsum(rows[v] / n * entropy(joint[v].values()) for v in joint)
    return min(max(h_label - h_cond, 0.0), h_label)


def _chi_squared(column: Sequence, labels: Sequence) -> float:
    joint, rows, cols = _contingency(column, labels)
    n = len(labels)
    # (O - E)^2 / E with E = r*c/n, kept in integers: (O*n - r*c)^2 / (n*r*c)
    stat = Fraction(0)
    for v, r in rows.items():
        for lab, c in cols.items():
            diff = joint[v][lab] * n - r * c
            if diff:
                stat += Fraction(diff * diff, n * r * c)
    return float(stat)


def info_gain(base: ExampleBase, feature: str) -> float:
    """H(L) - H(L | feature) in bits, from empirical frequencies."""
    return _info_gain(_nominal_feature(base, feature), base.labels)


def chi_squared(base: ExampleBase, feature: str) -> float:
    """Pearson chi-squared statistic of the feature x label table."""
    return _chi_squared(_nominal_feature(base, feature), base.labels)


def _relief_check(base: ExampleBase) -> None:
    if len(base.schema.labels) != 2:
        raise NotBinaryLabels(len(base.schema.labels))
    present = set(base.labels)
    missing = [lab for lab in base.schema.labels if lab not in present]
    if missing:
        raise DegenerateBase(f"Relief needs examples of both labels; none for {missing[0]!r}")


def relief_weights(base: ExampleBase, sample_count: int, rng_seed: int) -> dict[str, float]:
    """Kira-Rendell Relief weights for every feature of a two-label base.

    ``sample_count`` examples are drawn with replacement from a SplitMix64
    stream seeded with ``rng_seed``. Neighbours minimise the sum of per-feature
    diffs (range-normalised for numeric features, 0/1 for nominal ones); ties
    go to the earliest example. A sampled example that is the only one of its
    label has no near hit and contributes only its near-miss term.
    """
    if sample_count < 1:
        raise ConfigError("Relief sample count must be >= 1")
    _relief_check(base)
    rows = [ex.values for ex in base.examples]
    labels = base.labels
    n_feat = len(base.schema.features)
    scales = []
    for i, desc in enumerate(base.schema.features):
        if desc.is_numeric:
            col = [r[i] for r in rows]
            span = max(col) - min(col)
            scales.append(span if span > 0 else None)
        else:
            scales.append(False)

    def diff(i, a, b):
        s = scales[i]
        if s is False:
            return 0.0 if a == b else 1.0
        if s is None:
            return 0.0
        return abs(a - b) / s

    rng = SplitMix64(rng_seed)
    weights = [0.0] * n_feat
    for _ in range(sample_count):
        x = rng.randrange(len(rows))
        hit = miss = None
        hit_d = miss_d = 0.0
        for j, row in enumerate(rows):
            if j == x:
                continue
            d = sum(diff(i, rows[x][i], row[i]) for i in range(n_feat))
            if labels[j] == labels[x]:
                if hit is None or d < hit_d:
                    hit, hit_d = j, d
            elif miss is None or d < miss_d:
                miss, miss_d = j, d
        for i in range(n_feat):
            if hit is not None:
                weights[i] -= diff(i, rows[x][i], rows[hit][i])
            weights[i] += diff(i, rows[x][i], rows[miss][i])
    return {f.name: w / sample_count for f, w in zip(base.schema.features, weights)}


def relief_score(base: ExampleBase, feature: str, sample_count: int, rng_seed: int) -> float:
    base.schema.index(feature)
    return relief_weights(base, sample_count, rng_seed)[feature]


def _binned_column(base: ExampleBase, feature: str) -> list:
    column = base.column(feature)
    if not base.schema.descriptor(feature).is_numeric:
        return column
    scheme = IntervalScheme(feature, mdl_cuts(column, base.labels))
    return [scheme.interval_index(v) for v in column]


def score_features(
    base: ExampleBase,
    method: ScoreMethod | str,
    relief_samples: int | None = None,
    relief_seed: int = 0,
) -> list[FeatureScore]:
    """Score every feature of ``base`` in schema order.

    Relief defaults to one sample per example.
    """
    method = ScoreMethod(method)
    names = base.feature_names
    if method is ScoreMethod.RELIEF:
        if not names:
            _relief_check(base)
            return []
        m = relief_samples if relief_samples is not None else base.card
        weights = relief_weights(base, m, relief_seed)
        return [FeatureScore(name, method, weights[name]) for name in names]
    scorer = _info_gain if method is ScoreMethod.INFO_GAIN else _chi_squared
    labels = base.labels
    return [FeatureScore(name, method, scorer(_binned_column(base, name), labels)) for name in names]


def select_features(
    base: ExampleBase,
    policy: SelectionPolicy,
    relief_samples: int | None = None,
    relief_seed: int = 0,
) -> FeatureSubset:
    scores = score_features(base, policy.method, relief_samples, relief_seed)
    if policy.top_k is not None:
        # stable sort keeps schema order among equal scores
        ranked = sorted(range(len(scores)), key=lambda i: -scores[i].value)
        keep = set(ranked[: policy.top_k])
    else:
        keep = {i for i, s in enumerate(scores) if s.value > policy.threshold}
    chosen = tuple(s.feature for i, s in enumerate(scores) if i in keep)
    return FeatureSubset(chosen, policy, tuple(scores))
