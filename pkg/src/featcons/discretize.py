"""Supervised discretization of numeric features.

Interval schemes are right-closed: cuts ``c1 < ... < cn`` give the
intervals ``]-inf, c1]``, ``]c1, c2]``, ..., ``]cn, +inf]``.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Sequence

from featcons.errors import (
    ConfigError,
    DuplicateScheme,
    EmptyInput,
    LengthMismatch,
    NotNumeric,
    SchemaError,
)
from featcons.example_base import (
    Example,
    ExampleBase,
    FeatureDescriptor,
    FeatureSchema,
    Kind,
)

# Candidate cuts whose split entropies differ by less than this are treated
# as tied; the leftmost wins.
ENTROPY_TIE = 1e-12


def render_bound(x: float) -> str:
    if x == -math.inf:
        return "-inf"
    if x == math.inf:
        return "+inf"
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


@dataclass(frozen=True)
class IntervalScheme:
    feature: str
    cuts: tuple[float, ...] = ()

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        if any(not math.isfinite(c) for c in cuts):
            raise SchemaError(f"scheme for {self.feature!r}: cut points must be finite")
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise SchemaError(f"scheme for {self.feature!r}: cuts must be strictly increasing")
        object.__setattr__(self, "cuts", cuts)

    def interval_index(self, v: float) -> int:
        # number of cuts strictly below v; a value equal to a cut stays in
        # the interval closed at that cut
        return bisect_left(self.cuts, v)

    def bounds(self, i: int) -> tuple[float, float]:
        lo = self.cuts[i - 1] if i > 0 else -math.inf
        hi = self.cuts[i] if i < len(self.cuts) else math.inf
        return lo, hi

    def tokens(self) -> tuple[str, ...]:
        return tuple(self.token_for_index(i) for i in range(len(self.cuts) + 1))

    def token_for_index(self, i: int) -> str:
        lo, hi = self.bounds(i)
        return f"]{render_bound(lo)}, {render_bound(hi)}]"

    def token(self, v: float) -> str:
        return self.token_for_index(self.interval_index(v))


class MethodKind(str, Enum):
    MDL = "mdl"
    EQUAL_WIDTH = "equal-width"
    EQUAL_FREQUENCY = "equal-frequency"


@dataclass(frozen=True)
class DiscretizationMethod:
    kind: MethodKind = MethodKind.MDL
    bins: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MethodKind(self.kind))
        if self.kind is MethodKind.MDL:
            if self.bins is not None:
                raise ConfigError("MDL discretization takes no bin count")
        elif self.bins is None or self.bins < 1:
            raise ConfigError(f"{self.kind.value} discretization needs bins >= 1")

    @classmethod
    def mdl(cls) -> "DiscretizationMethod":
        return cls(MethodKind.MDL)

    @classmethod
    def equal_width(cls, bins: int) -> "DiscretizationMethod":
        return cls(MethodKind.EQUAL_WIDTH, bins)

    @classmethod
    def equal_frequency(cls, bins: int) -> "DiscretizationMethod":
        return cls(MethodKind.EQUAL_FREQUENCY, bins)

    def to_dict(self) -> dict:
        return {"method": self.kind.value, "bins": self.bins}

    def cuts(self, values: Sequence[float], labels: Sequence[Hashable]) -> tuple[float, ...]:
        if self.kind is MethodKind.MDL:
            return mdl_cuts(values, labels)
        if self.kind is MethodKind.EQUAL_WIDTH:
            return equal_width_cuts(values, self.bins)
        return equal_frequency_cuts(values, self.bins)


def entropy(counts: Iterable[int]) -> float:
    """Shannon entropy in bits of a count vector; exactly 0.0 for pure counts.

    ``math.fsum`` makes the result independent of the order of ``counts``.
    """
    counts = [c for c in counts if c]
    n = sum(counts)
    if len(counts) <= 1:
        return 0.0
    return -math.fsum(c / n * math.log2(c / n) for c in counts)


def _check_inputs(values, labels=None):
    if not values:
        raise EmptyInput("no values to discretize")
    if labels is not None and len(values) != len(labels):
        raise LengthMismatch(f"{len(values)} values but {len(labels)} labels")
    if any(not math.isfinite(v) for v in values):
        raise SchemaError("values must be finite")


def mdl_cuts(values: Sequence[float], labels: Sequence[Hashable]) -> tuple[float, ...]:
    """Fayyad-Irani recursive entropy minimization with the MDLP stopping rule.

    Only boundary points are tried: the midpoint between two adjacent
    distinct values, unless both values carry one and the same label. A
    cut is kept when its information gain exceeds
    ``(log2(N-1) + log2(3**k - 2) - k*H(S) + k1*H(S1) + k2*H(S2)) / N``.
    Output is sorted and independent of input order.
    """
    _check_inputs(values, labels)
    classes = {lab: i for i, lab in enumerate(dict.fromkeys(sorted(labels, key=repr)))}
    groups: dict[float, list[int]] = {}
    for v, lab in zip(values, labels):
        groups.setdefault(float(v), [0] * len(classes))[classes[lab]] += 1
    distinct = sorted(groups)
    table = [groups[v] for v in distinct]
    cuts: list[float] = []
    _mdl_split(distinct, table, 0, len(distinct), cuts)
    return tuple(sorted(cuts))


def _mdl_split(distinct, table, lo, hi, out):
    """Split the distinct-value run ``[lo, hi)`` and recurse on both halves."""
    if hi - lo < 2:
        return
    width = len(table[0])
    total = [0] * width
    for row in table[lo:hi]:
        for j, c in enumerate(row):
            total[j] += c
    n = sum(total)
    h_all = entropy(total)
    if h_all == 0.0:
        return

    best = None
    left = [0] * width
    for i in range(lo, hi - 1):
        for j, c in enumerate(table[i]):
            left[j] += c
        a, b = table[i], table[i + 1]
        if _pure_label(a) is not None and _pure_label(a) == _pure_label(b):
            continue
        right = [t - l for t, l in zip(total, left)]
        n_left = sum(left)
        split = (n_left * entropy(left) + (n - n_left) * entropy(right)) / n
        if best is None or split < best[0] - ENTROPY_TIE:
            best = (split, i, list(left), right)
    if best is None:
        return

    split, i, left, right = best
    gain = h_all - split
    k = sum(1 for c in total if c)
    k1 = sum(1 for c in left if c)
    k2 = sum(1 for c in right if c)
    delta = math.log2(3**k - 2) - (k * h_all - k1 * entropy(left) - k2 * entropy(right))
    if gain <= (math.log2(n - 1) + delta) / n:
        return
    out.append((distinct[i] + distinct[i + 1]) / 2)
    _mdl_split(distinct, table, lo, i + 1, out)
    _mdl_split(distinct, table, i + 1, hi, out)


def _pure_label(row):
    present = [j for j, c in enumerate(row) if c]
    return present[0] if len(present) == 1 else None


def equal_width_cuts(values: Sequence[float], bins: int) -> tuple[float, ...]:
    _check_inputs(values)
    if bins < 1:
        raise ConfigError("bins must be >= 1")
    lo, hi = min(values), max(values)
    if lo == hi:
        return ()
    step = (hi - lo) / bins
    return tuple(lo + step * i for i in range(1, bins))


def equal_frequency_cuts(values: Sequence[float], bins: int) -> tuple[float, ...]:
    """Cuts at the midpoints around the ``i*N/bins`` order statistics.

    Runs of equal values are never split, so fewer than ``bins - 1`` cuts
    may come back.
    """
    _check_inputs(values)
    if bins < 1:
        raise ConfigError("bins must be >= 1")
    ordered = sorted(values)
    n = len(ordered)
    cuts = []
    for i in range(1, bins):
        pos = round(i * n / bins)
        if 0 < pos < n and ordered[pos - 1] != ordered[pos]:
            cut = (ordered[pos - 1] + ordered[pos]) / 2
            if not cuts or cut > cuts[-1]:
                cuts.append(cut)
    return tuple(cuts)


def compute_schemes(
    base: ExampleBase, method: DiscretizationMethod, features: Iterable[str] | None = None
) -> list[IntervalScheme]:
    """One scheme per numeric feature of ``base`` (or of ``features``)."""
    labels = base.labels
    names = base.feature_names if features is None else list(features)
    schemes = []
    for name in names:
        if not base.schema.descriptor(name).is_numeric:
            if features is None:
                continue
            raise NotNumeric(name)
        schemes.append(IntervalScheme(name, method.cuts(base.column(name), labels)))
    return schemes


def apply_schemes(base: ExampleBase, schemes: Sequence[IntervalScheme]) -> ExampleBase:
    """Replace each covered numeric feature by its interval tokens.

    Vocabularies list every interval of the scheme in ascending order, even
    intervals no example falls in.
    """
    by_feature: dict[str, IntervalScheme] = {}
    for scheme in schemes:
        desc = base.schema.descriptor(scheme.feature)
        if not desc.is_numeric:
            raise NotNumeric(scheme.feature)
        if scheme.feature in by_feature:
            raise DuplicateScheme(scheme.feature)
        by_feature[scheme.feature] = scheme
    if not by_feature:
        return base

    positions = [(i, by_feature.get(f.name)) for i, f in enumerate(base.schema.features)]
    features = tuple(
        FeatureDescriptor(f.name, Kind.NOMINAL, s.tokens()) if s is not None else f
        for f, (_, s) in zip(base.schema.features, positions)
    )
    schema = FeatureSchema(features, base.schema.label_name, base.schema.labels)
    examples = tuple(
        Example(
            tuple(v if s is None else s.token(v) for v, (_, s) in zip(ex.values, positions)),
            ex.label,
        )
        for ex in base.examples
    )
    return ExampleBase(schema, examples)
