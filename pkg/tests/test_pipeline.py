import json
from fractions import Fraction

import pytest

from featcons.consistency import inconsistency_rate
from featcons.discretize import DiscretizationMethod
from featcons.errors import ConfigError, ConfigIncompatible
from featcons.example_base import ExampleBase, Kind, project
from featcons.filters import SelectionPolicy
from featcons.pipeline import EvaluationConfig, Verdict, evaluate, evaluate_many, recheck
from featcons.synth import GeneratorSpec, gen_consistent, gen_noisy

RAW = EvaluationConfig(selection=None, discretization=None)


def noise_only(seed, n=100):
    return gen_noisy(
        GeneratorSpec(seed=seed, example_count=n, relevant_feature_count=0,
                      irrelevant_feature_count=1, noise_rate=1.0, include_id=True)
    )


def test_random_and_id_features_are_dropped():
    base = noise_only(0)
    report = evaluate(base)
    assert report.selected == ()
    assert report.schemes == ()
    assert report.inconsistency == report.consistency.minority_proportion
    assert report.verdict is Verdict.NEEDS_MORE_FEATURES


def test_raw_audit_of_golden_table(b_ex2):
    report = evaluate(b_ex2, RAW)
    assert report.inconsistency == Fraction(1, 4)
    assert report.selected == ("M1", "M2", "M3")


def test_raw_audit_equals_inconsistency_rate():
    base = gen_noisy(GeneratorSpec(seed=5, example_count=60, relevant_feature_count=2, noise_rate=0.3))
    assert evaluate(base, RAW).consistency == inconsistency_rate(base, base.feature_names)


def test_determining_feature_is_adequate():
    base = gen_consistent(GeneratorSpec(seed=2, example_count=200, relevant_feature_count=1,
                                        irrelevant_feature_count=2))
    report = evaluate(base)
    assert "rel_1" in report.selected
    assert report.inconsistency == 0
    assert report.verdict is Verdict.ADEQUATE


def test_verdict_threshold():
    base = ExampleBase.from_rows(
        [("f", Kind.NOMINAL)],
        [["a"], ["a"], ["a"], ["b"], ["b"], ["b"], ["b"], ["b"]],
        ["x", "x", "y", "y", "y", "y", "y", "x"],
    )
    # inconsistency 2/8, minority 3/8
    lax = evaluate(base, EvaluationConfig(selection=None, discretization=None, verdict_threshold=0.7))
    strict = evaluate(base, EvaluationConfig(selection=None, discretization=None, verdict_threshold=0.6))
    assert lax.verdict is Verdict.ADEQUATE
    assert strict.verdict is Verdict.NEEDS_MORE_FEATURES
    with pytest.raises(ConfigError):
        EvaluationConfig(verdict_threshold=1.5)


def test_relief_on_multilabel_base_is_incompatible(fixtures):
    from featcons.example_base import load_csv

    base = load_csv(fixtures / "three_labels.csv", "label")
    with pytest.raises(ConfigIncompatible):
        evaluate(base, EvaluationConfig(selection=SelectionPolicy.by_threshold("relief", 0.0)))


def test_relief_pipeline():
    base = gen_consistent(GeneratorSpec(seed=8, example_count=120, relevant_feature_count=1,
                                        irrelevant_feature_count=1))
    config = EvaluationConfig(selection=SelectionPolicy.by_rank("relief", 1), relief_seed=4)
    report = evaluate(base, config)
    assert report.selected == ("rel_1",)
    assert report.inconsistency == 0
    assert evaluate(base, config).to_json() == report.to_json()


def test_report_is_self_consistent():
    base = gen_noisy(GeneratorSpec(seed=11, example_count=300, relevant_feature_count=2,
                                   irrelevant_feature_count=2, noise_rate=0.1))
    for config in (
        EvaluationConfig(),
        EvaluationConfig(selection=SelectionPolicy.by_rank("chi2", 2)),
        EvaluationConfig(discretization=DiscretizationMethod.equal_frequency(3)),
        EvaluationConfig(selection=None, discretization=DiscretizationMethod.equal_width(4)),
    ):
        report = evaluate(base, config)
        assert recheck(base, report) == report.consistency


def test_report_json_layout(b_ex2):
    report = evaluate(b_ex2, RAW, name="ex2")
    doc = json.loads(report.to_json())
    assert list(doc) == [
        "name", "input", "selection", "discretization", "consistency", "verdict", "config", "version",
    ]
    assert doc["input"] == {"examples": 8, "labels": 2, "features": 3}
    assert doc["consistency"]["inconsistency_exact"] == "1/4"
    assert doc["config"]["selection"] is None
    assert "inconsistency   : 0.25" in report.to_text()


def test_reports_are_deterministic():
    base = gen_noisy(GeneratorSpec(seed=3, example_count=150, relevant_feature_count=2,
                                   irrelevant_feature_count=1, noise_rate=0.2))
    assert evaluate(base).to_json() == evaluate(base).to_json()


def test_nested_sets_rank_non_increasing():
    base = gen_consistent(GeneratorSpec(seed=0, example_count=1000, relevant_feature_count=2,
                                        irrelevant_feature_count=2))
    chain = {
        "I": ["irr_1", "irr_2"],
        "B": ["irr_1", "irr_2", "rel_1"],
        "C": ["irr_1", "irr_2", "rel_1", "rel_2"],
    }
    items = [(name, project(base, fs), EvaluationConfig()) for name, fs in chain.items()]
    batch = evaluate_many(items)
    rates = {r.name: r.inconsistency for r in batch.reports}
    assert rates["I"] >= rates["B"] >= rates["C"]
    assert [r.name for r in batch.reports] == ["C", "B", "I"]
    assert evaluate_many(items, workers=3).reports == batch.reports


def test_batch_of_one_matches_evaluate(b_ex2):
    batch = evaluate_many([("x", b_ex2, RAW)])
    assert batch.failures == []
    assert batch.reports == [evaluate(b_ex2, RAW, name="x")]


def test_batch_collects_failures(fixtures, b_ex2):
    from featcons.example_base import load_csv

    three = load_csv(fixtures / "three_labels.csv", "label")
    bad = EvaluationConfig(selection=SelectionPolicy.by_threshold("relief", 0.0))
    batch = evaluate_many([("good", b_ex2, RAW), ("bad", three, bad), ("raw3", three, RAW)])
    assert [r.name for r in batch.reports] == ["raw3", "good"]
    assert [f.name for f in batch.failures] == ["bad"]
    assert isinstance(batch.failures[0].error, ConfigIncompatible)
    with pytest.raises(ConfigError):
        evaluate_many([])
