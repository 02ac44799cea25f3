"""Inconsistency rate of an example base and its bounds.

All rates are exact :class:`fractions.Fraction` values; convert with
``float()`` only for display.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from featcons.errors import EmptyHistogram, NotASubset, TooFewLabels
from featcons.example_base import Description, ExampleBase, _resolve, label_histogram


@dataclass(frozen=True)
class DescriptionCounts:
    description: Description
    counts: dict[str, int]
    majority: int
    # first label of the schema's label order reaching the majority count;
    # only for display, the rate does not depend on it
    majority_label: str


@dataclass(frozen=True)
class ConsistencyResult:
    inconsistency: Fraction
    minority_proportion: Fraction
    theoretical_max: Fraction
    distinct_description_count: int
    features: tuple[str, ...]
    breakdown: tuple[DescriptionCounts, ...]

    @property
    def card(self) -> int:
        return sum(sum(d.counts.values()) for d in self.breakdown)

    def to_dict(self, breakdown: bool = False) -> dict:
        out = {
            "features": list(self.features),
            "inconsistency": float(self.inconsistency),
            "inconsistency_exact": str(self.inconsistency),
            "minority_proportion": float(self.minority_proportion),
            "minority_proportion_exact": str(self.minority_proportion),
            "theoretical_max": float(self.theoretical_max),
            "ratio_to_minority": (
                float(self.inconsistency / self.minority_proportion)
                if self.minority_proportion
                else None
            ),
            "distinct_descriptions": self.distinct_description_count,
        }
        if breakdown:
            out["breakdown"] = [
                {
                    "description": list(d.description),
                    "counts": d.counts,
                    "majority": d.majority,
                    "majority_label": d.majority_label,
                }
                for d in self.breakdown
            ]
        return out


def theoretical_max(label_count: int) -> Fraction:
    """Worst-case inconsistency ``1 - 1/label_count``."""
    if label_count < 2:
        raise TooFewLabels(f"need at least 2 labels, got {label_count}")
    return 1 - Fraction(1, label_count)


def minority_bound(histogram: Mapping[str, int]) -> Fraction:
    """Share of examples outside the most frequent label.

    This is the inconsistency of the base once no feature is kept, hence an
    upper bound for every feature subset.
    """
    counts = list(histogram.values())
    if any(c < 0 for c in counts):
        raise EmptyHistogram("label counts must be non-negative")
    total = sum(counts)
    if total == 0:
        raise EmptyHistogram("histogram holds no examples")
    return 1 - Fraction(max(counts), total)


def inconsistency_rate(base: ExampleBase, subset: Iterable[str]) -> ConsistencyResult:
    idx = _resolve(base.schema, subset)
    groups: dict[Description, Counter] = {}
    for ex in base.examples:
        groups.setdefault(tuple(ex.values[i] for i in idx), Counter())[ex.label] += 1

    label_order = base.schema.labels
    breakdown = []
    covered = 0
    for description, counter in groups.items():
        counts = {lab: counter[lab] for lab in label_order if counter[lab]}
        majority = max(counts.values())
        covered += majority
        top = next(lab for lab in label_order if counter[lab] == majority)
        breakdown.append(DescriptionCounts(description, counts, majority, top))

    return ConsistencyResult(
        inconsistency=1 - Fraction(covered, base.card),
        minority_proportion=minority_bound(label_histogram(base)),
        theoretical_max=theoretical_max(len(label_order)),
        distinct_description_count=len(groups),
        features=tuple(base.schema.features[i].name for i in idx),
        breakdown=tuple(breakdown),
    )


def inconsistency_delta(
    base: ExampleBase, subset_small: Iterable[str], subset_large: Iterable[str]
) -> tuple[Fraction, Fraction, Fraction]:
    """Rates over a subset and a superset of it, and how much the rate drops."""
    small, large = list(subset_small), list(subset_large)
    missing = set(small) - set(large)
    if missing:
        raise NotASubset(f"{sorted(missing)} not in the larger subset")
    a = inconsistency_rate(base, small).inconsistency
    b = inconsistency_rate(base, large).inconsistency
    return a, b, a - b
