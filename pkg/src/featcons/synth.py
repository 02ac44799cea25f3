"""Seeded synthetic example bases.

Every generator draws from :class:`featcons.rng.SplitMix64`, so a given seed
produces the same base on any platform.

Relevant features take integer values ``0..k`` (``k`` = label count). Each
is binned to ``min(v, k - 1)``, which makes the top bin twice as likely as
the others, and the label is the sum of the bins modulo ``k``. With two or
more relevant features no single one determines the label, yet each one is
individually informative because its bins are unevenly weighted.
Irrelevant features are uniform floats in ``[0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from featcons.errors import SpecInvalid
from featcons.example_base import ExampleBase, Kind
from featcons.rng import SplitMix64


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int = 0
    example_count: int = 100
    label_count: int = 2
    relevant_feature_count: int = 1
    irrelevant_feature_count: int = 0
    noise_rate: float = 0.0
    # adds a numeric row-identifier column "id" (1..N)
    include_id: bool = False

    def validate(self) -> None:
        if self.example_count < 1:
            raise SpecInvalid("example_count must be >= 1")
        if self.label_count < 2:
            raise SpecInvalid("label_count must be >= 2")
        if self.relevant_feature_count < 0 or self.irrelevant_feature_count < 0:
            raise SpecInvalid("feature counts must be >= 0")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise SpecInvalid("noise_rate must lie in [0, 1]")


def label_names(k: int) -> tuple[str, ...]:
    return tuple(f"c{i}" for i in range(k))


def relevant_label(values, k: int) -> int:
    return sum(min(int(v), k - 1) for v in values) % k


def _build(spec: GeneratorSpec) -> tuple[list[tuple[str, Kind]], list[list[float]], list[int]]:
    rng = SplitMix64(spec.seed)
    k = spec.label_count
    features = [(f"rel_{i + 1}", Kind.NUMERIC) for i in range(spec.relevant_feature_count)]
    features += [(f"irr_{i + 1}", Kind.NUMERIC) for i in range(spec.irrelevant_feature_count)]
    if spec.include_id:
        features.append(("id", Kind.NUMERIC))
    rows, labels = [], []
    for n in range(spec.example_count):
        rel = [float(rng.randrange(k + 1)) for _ in range(spec.relevant_feature_count)]
        irr = [rng.random() for _ in range(spec.irrelevant_feature_count)]
        row = rel + irr + ([float(n + 1)] if spec.include_id else [])
        rows.append(row)
        labels.append(relevant_label(rel, k))
    return features, rows, labels


def _to_base(features, rows, labels, k) -> ExampleBase:
    names = label_names(k)
    return ExampleBase.from_rows(features, rows, [names[i] for i in labels], label_set=names)


def gen_consistent(spec: GeneratorSpec) -> ExampleBase:
    """Labels are a function of the relevant features: full-set inconsistency is 0."""
    spec.validate()
    if spec.relevant_feature_count < 1:
        raise SpecInvalid("a consistent base needs at least one relevant feature")
    if spec.noise_rate != 0:
        raise SpecInvalid("gen_consistent takes noise_rate 0; use gen_noisy")
    features, rows, labels = _build(spec)
    return _to_base(features, rows, labels, spec.label_count)


def gen_noisy(spec: GeneratorSpec) -> ExampleBase:
    """Like :func:`gen_consistent`, then ``round(noise_rate * N)`` distinct
    examples get a fresh uniform label (possibly their old one).

    With no relevant feature the clean label is constant, so ``noise_rate=1``
    yields labels independent of every feature.
    """
    spec.validate()
    if spec.relevant_feature_count + spec.irrelevant_feature_count + spec.include_id < 1:
        raise SpecInvalid("at least one feature is required")
    if spec.relevant_feature_count == 0 and spec.noise_rate == 0:
        raise SpecInvalid("without relevant features noise_rate must be > 0")
    features, rows, labels = _build(spec)
    # a separate stream keeps the clean part identical to gen_consistent
    rng = SplitMix64(spec.seed ^ 0x5DEECE66D)
    n = spec.example_count
    for i in rng.sample(n, round(spec.noise_rate * n)):
        labels[i] = rng.randrange(spec.label_count)
    return _to_base(features, rows, labels, spec.label_count)


def gen_worst(label_count: int, descriptions: int, copies_per_label: int) -> ExampleBase:
    """Every description carries every label equally often (maximal inconsistency)."""
    if label_count < 2 or descriptions < 1 or copies_per_label < 1:
        raise SpecInvalid("need label_count >= 2, descriptions >= 1, copies_per_label >= 1")
    names = label_names(label_count)
    rows, labels = [], []
    for d in range(descriptions):
        for lab in names:
            for _ in range(copies_per_label):
                rows.append([f"s{d + 1}"])
                labels.append(lab)
    return ExampleBase.from_rows([("d", Kind.NOMINAL)], rows, labels, label_set=names)
