"""The three-step evaluation: select, discretize, measure inconsistency."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import featcons
from featcons.consistency import ConsistencyResult, inconsistency_rate
from featcons.discretize import DiscretizationMethod, IntervalScheme, apply_schemes, compute_schemes
from featcons.errors import ConfigError, ConfigIncompatible, FeatconsError
from featcons.example_base import ExampleBase, project
from featcons.filters import FeatureScore, ScoreMethod, SelectionPolicy, select_features

DEFAULT_TAU = 0.5


class Verdict(str, Enum):
    ADEQUATE = "adequate"
    NEEDS_MORE_FEATURES = "needs-more-features"


@dataclass(frozen=True)
class EvaluationConfig:
    """Step settings. ``None`` for ``selection`` or ``discretization`` skips
    that step; skipping both audits the raw base.

    ``relief_samples`` of ``None`` means one Relief sample per example.
    """

    selection: SelectionPolicy | None = field(default_factory=SelectionPolicy)
    discretization: DiscretizationMethod | None = field(default_factory=DiscretizationMethod)
    relief_samples: int | None = None
    relief_seed: int = 0
    verdict_threshold: float = DEFAULT_TAU

    def __post_init__(self):
        if not 0.0 <= self.verdict_threshold <= 1.0:
            raise ConfigError("verdict threshold must lie in [0, 1]")
        if self.relief_samples is not None and self.relief_samples < 1:
            raise ConfigError("relief_samples must be >= 1")

    def to_dict(self) -> dict:
        return {
            "selection": self.selection.to_dict() if self.selection else None,
            "discretization": self.discretization.to_dict() if self.discretization else None,
            "relief_samples": self.relief_samples,
            "relief_seed": self.relief_seed,
            "verdict_threshold": self.verdict_threshold,
            "verdict_rule": "needs-more-features when inconsistency > threshold * minority",
        }


@dataclass(frozen=True)
class EvaluationReport:
    name: str
    card: int
    label_count: int
    feature_count: int
    selected: tuple[str, ...]
    scores: tuple[FeatureScore, ...]
    schemes: tuple[IntervalScheme, ...]
    consistency: ConsistencyResult
    verdict: Verdict
    config: EvaluationConfig
    version: str = featcons.__version__

    @property
    def inconsistency(self):
        return self.consistency.inconsistency

    def to_dict(self) -> dict:
        sel = self.config.selection
        return {
            "name": self.name,
            "input": {
                "examples": self.card,
                "labels": self.label_count,
                "features": self.feature_count,
            },
            "selection": {
                "policy": sel.to_dict() if sel else None,
                "scores": [s.to_dict() for s in self.scores],
                "selected": list(self.selected),
            },
            "discretization": {
                s.feature: {"cuts": list(s.cuts), "intervals": list(s.tokens())}
                for s in self.schemes
            },
            "consistency": self.consistency.to_dict(),
            "verdict": self.verdict.value,
            "config": self.config.to_dict(),
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        c = self.consistency
        lines = [
            f"feature set     : {self.name or '(unnamed)'}",
            f"examples        : {self.card}   labels: {self.label_count}   features: {self.feature_count}",
            f"selected        : {', '.join(self.selected) if self.selected else '(none)'}",
        ]
        for s in self.scores:
            lines.append(f"  score {s.method.value:<9} {s.feature:<20} {s.value:.6g}")
        for s in self.schemes:
            lines.append(f"  bins  {s.feature:<20} {' '.join(s.tokens())}")
        lines += [
            f"inconsistency   : {float(c.inconsistency):.6g} ({c.inconsistency})",
            f"minority        : {float(c.minority_proportion):.6g}",
            f"theoretical max : {float(c.theoretical_max):.6g}",
            f"descriptions    : {c.distinct_description_count}",
            f"verdict         : {self.verdict.value}",
        ]
        return "\n".join(lines) + "\n"


def _verdict(result: ConsistencyResult, tau: float) -> Verdict:
    if result.inconsistency > tau * result.minority_proportion:
        return Verdict.NEEDS_MORE_FEATURES
    return Verdict.ADEQUATE


def evaluate(base: ExampleBase, config: EvaluationConfig | None = None, name: str = "") -> EvaluationReport:
    config = config or EvaluationConfig()
    policy = config.selection
    if policy is not None and policy.method is ScoreMethod.RELIEF and len(base.schema.labels) != 2:
        raise ConfigIncompatible(
            f"Relief selection needs a two-label base, got {len(base.schema.labels)} labels"
        )

    if policy is not None:
        subset = select_features(base, policy, config.relief_samples, config.relief_seed)
        selected, scores = subset.features, subset.scores
    else:
        selected, scores = base.feature_names, ()
    reduced = project(base, selected)

    schemes: list[IntervalScheme] = []
    if config.discretization is not None and selected:
        schemes = compute_schemes(reduced, config.discretization)
        reduced = apply_schemes(reduced, schemes)

    result = inconsistency_rate(reduced, reduced.feature_names)
    return EvaluationReport(
        name=name,
        card=base.card,
        label_count=len(base.schema.labels),
        feature_count=len(base.schema.features),
        selected=tuple(selected),
        scores=tuple(scores),
        schemes=tuple(schemes),
        consistency=result,
        verdict=_verdict(result, config.verdict_threshold),
        config=config,
    )


@dataclass(frozen=True)
class BatchFailure:
    name: str
    error: FeatconsError


@dataclass(frozen=True)
class BatchResult:
    reports: list[EvaluationReport]
    failures: list[BatchFailure]


def evaluate_many(
    items: Sequence[tuple[str, ExampleBase, EvaluationConfig]], workers: int = 1
) -> BatchResult:
    """Evaluate independent (name, base, config) items.

    Reports come back sorted by inconsistency, then name. A failing item is
    recorded in ``failures`` and does not stop the others.
    """
    if not items:
        raise ConfigError("nothing to evaluate")

    def run(item):
        name, base, config = item
        try:
            return evaluate(base, config, name=name)
        except FeatconsError as exc:
            return BatchFailure(name, exc)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, items))
    else:
        outcomes = [run(item) for item in items]
    reports = [o for o in outcomes if isinstance(o, EvaluationReport)]
    failures = [o for o in outcomes if isinstance(o, BatchFailure)]
    reports.sort(key=lambda r: (r.inconsistency, r.name))
    return BatchResult(reports, failures)


def recheck(base: ExampleBase, report: EvaluationReport) -> ConsistencyResult:
    """Recompute the rate from the report's own subset and schemes."""
    reduced = apply_schemes(project(base, report.selected), list(report.schemes))
    return inconsistency_rate(reduced, reduced.feature_names)
