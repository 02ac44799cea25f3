"""Feature-set evaluation by example-base consistency.

The three steps are exposed as plain functions (``select_features``,
``compute_schemes``/``apply_schemes``, ``inconsistency_rate``) and chained
by :func:`featcons.pipeline.evaluate`.
"""

__version__ = "0.1.0"

from featcons.consistency import (
    ConsistencyResult,
    inconsistency_delta,
    inconsistency_rate,
    minority_bound,
    theoretical_max,
)
from featcons.discretize import (
    DiscretizationMethod,
    IntervalScheme,
    apply_schemes,
    equal_frequency_cuts,
    equal_width_cuts,
    mdl_cuts,
)
from featcons.example_base import (
    Example,
    ExampleBase,
    FeatureDescriptor,
    FeatureSchema,
    Kind,
    count_examples,
    distinct_descriptions,
    label_histogram,
    load_csv,
    project,
    write_csv,
)
from featcons.filters import (
    FeatureScore,
    FeatureSubset,
    ScoreMethod,
    SelectionPolicy,
    chi_squared,
    info_gain,
    relief_score,
    select_features,
)
from featcons.pipeline import EvaluationConfig, EvaluationReport, evaluate, evaluate_many

__all__ = [
    "ConsistencyResult",
    "DiscretizationMethod",
    "EvaluationConfig",
    "EvaluationReport",
    "Example",
    "ExampleBase",
    "FeatureDescriptor",
    "FeatureSchema",
    "FeatureScore",
    "FeatureSubset",
    "IntervalScheme",
    "Kind",
    "ScoreMethod",
    "SelectionPolicy",
    "apply_schemes",
    "chi_squared",
    "count_examples",
    "distinct_descriptions",
    "equal_frequency_cuts",
    "equal_width_cuts",
    "evaluate",
    "evaluate_many",
    "inconsistency_delta",
    "inconsistency_rate",
    "info_gain",
    "label_histogram",
    "load_csv",
    "mdl_cuts",
    "minority_bound",
    "project",
    "relief_score",
    "select_features",
    "theoretical_max",
    "write_csv",
]
