"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
input), 3 configuration incompatible with the data. Results go to stdout
(or ``--output``) only once complete; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from featcons import __version__
from featcons.consistency import minority_bound, theoretical_max
from featcons.discretize import DiscretizationMethod, apply_schemes, compute_schemes
from featcons.errors import ConfigError, DataError, FeatconsError
from featcons.example_base import ExampleBase, label_histogram, load_csv, load_schema_file, project, to_csv_text
from featcons.filters import ScoreMethod, SelectionPolicy, score_features
from featcons.pipeline import BatchFailure, EvaluationConfig, evaluate, evaluate_many
from featcons.synth import GeneratorSpec, gen_consistent, gen_noisy, gen_worst

SEED_ENV = "FEATCONS_SEED"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONFIG = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _add_input(p):
    p.add_argument("--input", "-i", required=True, help="CSV file with a header row")
    p.add_argument("--label", "-l", help="label column (or set it in --schema)")
    p.add_argument("--schema", help="JSON sidecar pinning column kinds / label column / label set")


def _add_output(p, formats, default):
    p.add_argument("--format", "-f", choices=formats, default=default)
    p.add_argument("--output", "-o", help="write here instead of stdout")


def _features_arg(text):
    return [f.strip() for f in text.split(",") if f.strip()] if text else []


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="featcons", description="Evaluate feature sets by example-base consistency.")
    parser.add_argument("--version", action="version", version=f"featcons {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("evaluate", help="run selection, discretization and inconsistency")
    _add_input(ev)
    ev.add_argument("--name", default="", help="name recorded in the report")
    ev.add_argument("--features", type=_features_arg, help="comma-separated feature set to evaluate")
    ev.add_argument(
        "--feature-set",
        action="append",
        default=[],
        metavar="NAME=f1,f2",
        help="evaluate several named feature sets (repeatable); output is a ranked batch",
    )
    ev.add_argument("--select", choices=["none", "infogain", "chi2", "relief"], default="infogain")
    mode = ev.add_mutually_exclusive_group()
    mode.add_argument("--threshold", type=float, help="keep features scoring above this (default 0)")
    mode.add_argument("--top-k", type=int, help="keep the k best features")
    ev.add_argument(
        "--discretize", choices=["none", "mdl", "equal-width", "equal-frequency"], default="mdl"
    )
    ev.add_argument("--bins", type=int, help="bin count for equal-width / equal-frequency")
    ev.add_argument("--relief-samples", type=int, help="Relief sample count (default: one per example)")
    ev.add_argument("--seed", type=int, help=f"Relief seed (default ${SEED_ENV} or 0)")
    ev.add_argument("--tau", type=float, default=0.5, help="verdict threshold (default 0.5)")
    _add_output(ev, ["json", "text"], "json")

    sc = sub.add_parser("score", help="per-feature relevance scores")
    _add_input(sc)
    sc.add_argument("--method", choices=["infogain", "chi2", "relief"], default="infogain")
    sc.add_argument("--relief-samples", type=int)
    sc.add_argument("--seed", type=int)
    _add_output(sc, ["json", "text"], "json")

    di = sub.add_parser("discretize", help="discretize numeric features and emit a CSV")
    _add_input(di)
    di.add_argument("--method", choices=["mdl", "equal-width", "equal-frequency"], default="mdl")
    di.add_argument("--bins", type=int)
    di.add_argument("--features", type=_features_arg, help="only these numeric features")
    _add_output(di, ["csv", "json"], "csv")

    ins = sub.add_parser("inspect", help="summarize an example base")
    _add_input(ins)
    _add_output(ins, ["text", "json"], "text")

    sy = sub.add_parser("synth", help="write a synthetic example base as CSV")
    sy.add_argument("--kind", choices=["consistent", "noisy", "worst"], default="consistent")
    sy.add_argument("--seed", type=int)
    sy.add_argument("--examples", type=int, default=100)
    sy.add_argument("--labels", type=int, default=2)
    sy.add_argument("--relevant", type=int, default=1)
    sy.add_argument("--irrelevant", type=int, default=0)
    sy.add_argument("--noise", type=float, default=0.0)
    sy.add_argument("--id", action="store_true", help="add a numeric row identifier column")
    sy.add_argument("--descriptions", type=int, default=1, help="worst case: distinct descriptions")
    sy.add_argument("--copies", type=int, default=1, help="worst case: copies per label")
    sy.add_argument("--output", "-o")
    return parser


def _load(args) -> ExampleBase:
    hints, labels, label = None, None, args.label
    if args.schema:
        sidecar = load_schema_file(args.schema)
        hints, labels = sidecar["columns"], sidecar["labels"]
        label = label or sidecar["label"]
    if not label:
        raise UsageError("a label column is required (--label or the schema file)")
    return load_csv(args.input, label, hints, labels)


def _method(name, bins) -> DiscretizationMethod | None:
    if name == "none":
        return None
    if name == "mdl":
        if bins is not None:
            raise UsageError("--bins does not apply to mdl")
        return DiscretizationMethod.mdl()
    if bins is None:
        raise UsageError(f"--bins is required for {name}")
    return DiscretizationMethod(name, bins)


def _config(args) -> EvaluationConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    selection = None
    if args.select != "none":
        if args.top_k is not None:
            selection = SelectionPolicy.by_rank(args.select, args.top_k)
        else:
            t = args.threshold if args.threshold is not None else 0.0
            selection = SelectionPolicy.by_threshold(args.select, t)
    elif args.top_k is not None or args.threshold is not None:
        raise UsageError("--threshold/--top-k need a selection method")
    return EvaluationConfig(
        selection=selection,
        discretization=_method(args.discretize, args.bins),
        relief_samples=args.relief_samples,
        relief_seed=seed,
        verdict_threshold=args.tau,
    )


def _cmd_evaluate(args) -> str:
    config = _config(args)
    if args.feature_set and args.features:
        raise UsageError("--features and --feature-set are exclusive")
    sets = []
    for spec in args.feature_set:
        name, sep, names = spec.partition("=")
        if not sep or not name:
            raise UsageError(f"--feature-set expects NAME=f1,f2 (got {spec!r})")
        sets.append((name, _features_arg(names)))
    base = _load(args)
    if sets:
        items, failures = [], []
        for name, names in sets:
            try:
                items.append((name, project(base, names), config))
            except FeatconsError as exc:
                failures.append(BatchFailure(name, exc))
        reports = []
        if items:
            batch = evaluate_many(items)
            reports, failures = batch.reports, failures + batch.failures
        if args.format == "text":
            text = "".join(r.to_text() + "\n" for r in reports)
            text += "".join(f"FAILED {f.name}: {f.error}\n" for f in failures)
            return text
        doc = {
            "reports": [r.to_dict() for r in reports],
            "failures": [{"name": f.name, "error": str(f.error)} for f in failures],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if args.features is not None:
        base = project(base, args.features)
    report = evaluate(base, config, name=args.name)
    return report.to_json() if args.format == "json" else report.to_text()


def _cmd_score(args) -> str:
    base = _load(args)
    seed = args.seed if args.seed is not None else _default_seed()
    scores = score_features(base, ScoreMethod(args.method), args.relief_samples, seed)
    if args.format == "text":
        return "".join(f"{s.feature}\t{s.value:.6g}\n" for s in scores)
    return json.dumps([s.to_dict() for s in scores], indent=2) + "\n"


def _cmd_discretize(args) -> str:
    method = _method(args.method, args.bins)
    base = _load(args)
    schemes = compute_schemes(base, method, args.features)
    if args.format == "json":
        doc = {s.feature: {"cuts": list(s.cuts), "intervals": list(s.tokens())} for s in schemes}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return to_csv_text(apply_schemes(base, schemes))


def _cmd_inspect(args) -> str:
    base = _load(args)
    hist = label_histogram(base)
    doc = {
        "examples": base.card,
        "labels": len(base.schema.labels),
        "label_column": base.schema.label_name,
        "features": {f.name: f.kind.value for f in base.schema.features},
        "label_histogram": hist,
        "minority_proportion": float(minority_bound(hist)),
        "theoretical_max": float(theoretical_max(len(base.schema.labels))),
    }
    if args.format == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    lines = [f"examples           {doc['examples']}", f"labels             {doc['labels']}"]
    lines += [f"feature            {name} ({kind})" for name, kind in doc["features"].items()]
    lines += [f"label              {lab}: {n}" for lab, n in hist.items()]
    lines.append(f"minority           {doc['minority_proportion']:.6g}")
    lines.append(f"theoretical max    {doc['theoretical_max']:.6g}")
    return "\n".join(lines) + "\n"


def _cmd_synth(args) -> str:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.kind == "worst":
        base = gen_worst(args.labels, args.descriptions, args.copies)
    else:
        spec = GeneratorSpec(
            seed=seed,
            example_count=args.examples,
            label_count=args.labels,
            relevant_feature_count=args.relevant,
            irrelevant_feature_count=args.irrelevant,
            noise_rate=args.noise,
            include_id=args.id,
        )
        base = gen_consistent(spec) if args.kind == "consistent" else gen_noisy(spec)
    return to_csv_text(base)


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "score": _cmd_score,
    "discretize": _cmd_discretize,
    "inspect": _cmd_inspect,
    "synth": _cmd_synth,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = _COMMANDS[args.command](args)
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA
    except DataError as exc:
        print(f"data error: {exc}", file=stderr)
        return EXIT_DATA
    except ConfigError as exc:
        print(f"config error: {exc}", file=stderr)
        return EXIT_CONFIG
    except FeatconsError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA

    if getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_DATA
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
