import sys
from pathlib import Path

import pytest

from featcons.example_base import ExampleBase, Kind, load_csv
from featcons.rng import SplitMix64

FIXTURES = Path(__file__).parent / "fixtures"

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def b_ex1():
    return load_csv(FIXTURES / "b_ex1.csv", "label")


@pytest.fixture
def b_ex2():
    return load_csv(FIXTURES / "b_ex2.csv", "label")


def random_base(seed, n_examples, n_features, n_labels, grid=3, numeric=False):
    """Small-vocabulary random base, so descriptions repeat and conflict."""
    rng = SplitMix64(seed)
    kind = Kind.NUMERIC if numeric else Kind.NOMINAL
    features = [(f"f{i}", kind) for i in range(n_features)]
    rows = []
    for _ in range(n_examples):
        cells = [rng.randrange(grid) for _ in range(n_features)]
        rows.append([float(c) if numeric else f"v{c}" for c in cells])
    labels = [f"l{rng.randrange(n_labels)}" for _ in range(n_examples)]
    return ExampleBase.from_rows(
        features, rows, labels, label_set=tuple(f"l{i}" for i in range(n_labels))
    )


# Acceptance criteria report one PASS/FAIL line each at the end of the run.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
