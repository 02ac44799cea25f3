"""Labeled example bases: schema, validation, CSV ingestion and projections."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from featcons.errors import (
    EmptyBase,
    MissingLabelColumn,
    MissingValue,
    RaggedRow,
    SchemaError,
    SingleLabel,
    UnknownFeature,
    UnknownLabel,
    UnparseableNumeric,
)

Value = Union[float, str]
# A description is the tuple of an example's values over a feature subset,
# in schema order.
Description = tuple

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


class Kind(str, Enum):
    NUMERIC = "numeric"
    NOMINAL = "nominal"


@dataclass(frozen=True)
class FeatureDescriptor:
    name: str
    kind: Kind
    vocabulary: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise SchemaError("feature name must be non-empty")
        if self.kind is Kind.NOMINAL:
            if not self.vocabulary:
                raise SchemaError(f"nominal feature {self.name!r} has an empty vocabulary")
            if len(set(self.vocabulary)) != len(self.vocabulary):
                raise SchemaError(f"nominal feature {self.name!r} has duplicate vocabulary entries")
        elif self.vocabulary:
            raise SchemaError(f"numeric feature {self.name!r} cannot carry a vocabulary")

    @property
    def is_numeric(self) -> bool:
        return self.kind is Kind.NUMERIC


@dataclass(frozen=True)
class FeatureSchema:
    features: tuple[FeatureDescriptor, ...]
    label_name: str
    labels: tuple[str, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("feature names must be unique")
        if not self.label_name:
            raise SchemaError("label name must be non-empty")
        if self.label_name in names:
            raise SchemaError(f"label name {self.label_name!r} collides with a feature name")
        if len(self.labels) < 2:
            raise SchemaError("a schema needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise SchemaError("duplicate labels in label set")

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def index(self, name: str) -> int:
        for i, f in enumerate(self.features):
            if f.name == name:
                return i
        raise UnknownFeature(name)

    def descriptor(self, name: str) -> FeatureDescriptor:
        return self.features[self.index(name)]


@dataclass(frozen=True)
class Example:
    values: tuple
    label: str


@dataclass(frozen=True)
class ExampleBase:
    """Immutable table of labeled examples.

    Construction validates every example against the schema; every
    transformation in this package returns a new base.
    """

    schema: FeatureSchema
    examples: tuple[Example, ...] = field(repr=False)

    def __post_init__(self):
        if not self.examples:
            raise EmptyBase()
        width = len(self.schema.features)
        labels = set(self.schema.labels)
        vocabs = [set(f.vocabulary) if not f.is_numeric else None for f in self.schema.features]
        for row, ex in enumerate(self.examples):
            if len(ex.values) != width:
                raise SchemaError(f"example {row}: {len(ex.values)} values for {width} features")
            if ex.label not in labels:
                raise UnknownLabel(ex.label)
            for v, vocab, desc in zip(ex.values, vocabs, self.schema.features):
                if vocab is None:
                    if type(v) is not float or not math.isfinite(v):
                        raise SchemaError(
                            f"example {row}: feature {desc.name!r} needs a finite float, got {v!r}"
                        )
                elif v not in vocab:
                    raise SchemaError(f"example {row}: {v!r} not in vocabulary of {desc.name!r}")

    @classmethod
    def from_rows(
        cls,
        features: Sequence[tuple[str, Kind]],
        rows: Iterable[Sequence],
        labels: Iterable[str],
        label_name: str = "label",
        label_set: Sequence[str] | None = None,
    ) -> "ExampleBase":
        """Build a base from raw rows, inferring vocabularies in first-seen order.

        Numeric cells are coerced to float.
        """
        rows = [tuple(r) for r in rows]
        labels = list(labels)
        if len(rows) != len(labels):
            raise SchemaError(f"{len(rows)} rows but {len(labels)} labels")
        kinds = [Kind(k) for _, k in features]
        fixed = [
            tuple(float(v) if k is Kind.NUMERIC else str(v) for v, k in zip(r, kinds)) for r in rows
        ]
        descriptors = []
        for i, (name, kind) in enumerate(zip((n for n, _ in features), kinds)):
            vocab = tuple(dict.fromkeys(r[i] for r in fixed)) if kind is Kind.NOMINAL else ()
            descriptors.append(FeatureDescriptor(name, kind, vocab))
        if label_set is None:
            label_set = tuple(dict.fromkeys(labels))
        schema = FeatureSchema(tuple(descriptors), label_name, tuple(label_set))
        return cls(schema, tuple(Example(r, l) for r, l in zip(fixed, labels)))

    def __len__(self) -> int:
        return len(self.examples)

    @property
    def card(self) -> int:
        return len(self.examples)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return self.schema.feature_names

    @property
    def labels(self) -> list[str]:
        return [ex.label for ex in self.examples]

    def column(self, name: str) -> list:
        i = self.schema.index(name)
        return [ex.values[i] for ex in self.examples]


def _resolve(schema: FeatureSchema, subset: Iterable[str]) -> list[int]:
    """Column indices for ``subset``, in schema order."""
    wanted = list(subset)
    idx = {schema.index(name) for name in wanted}
    return sorted(idx)


def _project_values(ex: Example, idx: Sequence[int]) -> Description:
    return tuple(ex.values[i] for i in idx)


def distinct_descriptions(base: ExampleBase, subset: Iterable[str]) -> list[Description]:
    """Deduplicated descriptions over ``subset`` in first-occurrence order.

    The empty subset yields exactly one (empty) description.
    """
    idx = _resolve(base.schema, subset)
    seen = dict.fromkeys(_project_values(ex, idx) for ex in base.examples)
    return list(seen)


def count_examples(base: ExampleBase, subset: Iterable[str], s: Description, label: str) -> int:
    if label not in base.schema.labels:
        raise UnknownLabel(label)
    idx = _resolve(base.schema, subset)
    s = tuple(s)
    return sum(1 for ex in base.examples if ex.label == label and _project_values(ex, idx) == s)


def label_histogram(base: ExampleBase) -> dict[str, int]:
    counts = Counter(ex.label for ex in base.examples)
    return {label: counts.get(label, 0) for label in base.schema.labels}


def project(base: ExampleBase, subset: Iterable[str]) -> ExampleBase:
    idx = _resolve(base.schema, subset)
    if len(idx) == len(base.schema.features):
        return base
    schema = FeatureSchema(
        tuple(base.schema.features[i] for i in idx), base.schema.label_name, base.schema.labels
    )
    examples = tuple(Example(_project_values(ex, idx), ex.label) for ex in base.examples)
    return ExampleBase(schema, examples)


def _parse_number(cell: str) -> float | None:
    cell = cell.strip()
    if not _DECIMAL.match(cell):
        return None
    v = float(cell)
    return v if math.isfinite(v) else None


def read_csv(
    stream: io.TextIOBase,
    label_column: str,
    schema_hints: Mapping[str, Kind | str] | None = None,
    labels: Sequence[str] | None = None,
) -> ExampleBase:
    """Parse an example base from an open text stream; see :func:`load_csv`."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyBase("CSV has no header row") from None
    if label_column not in header:
        raise MissingLabelColumn(label_column)
    if len(set(header)) != len(header):
        raise SchemaError("duplicate column names in header")
    hints = {k: Kind(v) for k, v in (schema_hints or {}).items()}
    for name in hints:
        if name not in header or name == label_column:
            raise UnknownFeature(name)

    rows = []
    # line numbers are 1-based with the header on line 1
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise RaggedRow(line_no, len(header), len(row))
        for col, cell in zip(header, row):
            if cell.strip() == "":
                raise MissingValue(line_no, col)
        rows.append((line_no, row))
    if not rows:
        raise EmptyBase("CSV has no data rows")

    label_at = header.index(label_column)
    feature_cols = [i for i in range(len(header)) if i != label_at]
    observed = [row[label_at] for _, row in rows]
    distinct = tuple(dict.fromkeys(observed))
    if labels is None:
        if len(distinct) < 2:
            raise SingleLabel(distinct[0])
        labels = distinct
    else:
        unknown = set(distinct) - set(labels)
        if unknown:
            raise UnknownLabel(sorted(unknown)[0])

    kinds = []
    columns = []
    for i in feature_cols:
        name = header[i]
        cells = [row[i] for _, row in rows]
        kind = hints.get(name)
        if kind is Kind.NUMERIC or kind is None:
            parsed = [_parse_number(c) for c in cells]
            bad = next((k for k, v in enumerate(parsed) if v is None), None)
            if bad is None:
                kinds.append(Kind.NUMERIC)
                columns.append(parsed)
                continue
            if kind is Kind.NUMERIC:
                raise UnparseableNumeric(rows[bad][0], name, cells[bad])
        kinds.append(Kind.NOMINAL)
        columns.append(cells)

    table = list(zip(*columns)) if columns else [() for _ in rows]
    return ExampleBase.from_rows(
        [(header[i], k) for i, k in zip(feature_cols, kinds)],
        table,
        observed,
        label_name=label_column,
        label_set=labels,
    )


def load_csv(
    path: str | Path,
    label_column: str,
    schema_hints: Mapping[str, Kind | str] | None = None,
    labels: Sequence[str] | None = None,
) -> ExampleBase:
    """Load an example base from a CSV file with a header row.

    A column is numeric when every cell parses as a finite decimal number,
    otherwise nominal; ``schema_hints`` overrides that per column. ``labels``
    pins the declared label set (and its order), which may include labels
    absent from the file. Empty cells are rejected.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv(fh, label_column, schema_hints, labels)


def load_schema_file(path: str | Path) -> dict:
    """Read a JSON sidecar of the form
    ``{"label": "col", "columns": {"f1": "numeric"}, "labels": [...]}``.
    Every key is optional.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"schema file {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise SchemaError(f"schema file {path}: expected a JSON object")
    try:
        columns = {k: Kind(v) for k, v in raw.get("columns", {}).items()}
    except ValueError as exc:
        raise SchemaError(f"schema file {path}: {exc}") from None
    return {"label": raw.get("label"), "columns": columns, "labels": raw.get("labels")}


def format_value(v: Value) -> str:
    return repr(v) if isinstance(v, float) else v


def to_csv_text(base: ExampleBase) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*base.feature_names, base.schema.label_name])
    for ex in base.examples:
        writer.writerow([*(format_value(v) for v in ex.values), ex.label])
    return buf.getvalue()


def write_csv(base: ExampleBase, path: str | Path) -> None:
    Path(path).write_text(to_csv_text(base), encoding="utf-8")
