from __future__ import annotations

from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from revpriv.core import ChoiceProblem, load_problem

DATA = Path(__file__).parent / "data"

# six observations over {x, y, z, w} that no additive model explains
COUNTEREXAMPLE_RECORDS = [
    ("xz", "z"),
    ("xyz", "x"),
    ("wz", "w"),
    ("wyz", "z"),
    ("xw", "x"),
    ("xyw", "w"),
]


def make_problem(alts, records) -> ChoiceProblem:
    return ChoiceProblem.from_records(list(alts), [(list(m), c) for m, c in records])


def random_problem(rng: np.random.Generator, max_alts: int = 6, max_menus: int = 10, min_alts: int = 1) -> ChoiceProblem:
    """Uniformly random distinct menus (size >= 1) with arbitrary choices."""
    n = int(rng.integers(min_alts, max_alts + 1))
    alts = [chr(ord("a") + i) for i in range(n)]
    subsets = [c for r in range(1, n + 1) for c in combinations(alts, r)]
    k = int(rng.integers(0, min(max_menus, len(subsets)) + 1))
    idx = rng.choice(len(subsets), size=k, replace=False) if k else []
    records = []
    for i in idx:
        menu = subsets[int(i)]
        records.append((menu, menu[int(rng.integers(len(menu)))]))
    return make_problem(alts, records)


@pytest.fixture
def counterexample() -> ChoiceProblem:
    return make_problem("xyzw", COUNTEREXAMPLE_RECORDS)


@pytest.fixture
def cycle3() -> ChoiceProblem:
    return make_problem("xyz", [("xy", "x"), ("yz", "y"), ("xz", "z")])


@pytest.fixture
def counterexample_path() -> Path:
    return DATA / "counterexample.json"


@pytest.fixture
def cycle3_path() -> Path:
    return DATA / "cycle3.json"


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
