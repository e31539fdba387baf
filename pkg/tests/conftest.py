"""Shared fixtures, hypothesis strategies and independent oracles."""
from __future__ import annotations

import itertools
import random
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from minsetplus.model import (
    CATEGORICAL,
    NUMERIC,
    Assertion,
    IndividualTable,
    KnowledgeBase,
    ValueSet,
    VariableSpec,
)

DATA = Path(__file__).parent / "data"

REFERENCE_GRID = [
    [0.7, 0.0, 0.1, 0.1, 0.0, 0.1],
    [0.0, 0.6, 0.1, 0.7, 0.0, 0.5],
    [0.0, 0.3, 0.5, 0.3, 0.6, 0.1],
    [0.0, 0.6, 0.1, 0.7, 0.6, 0.5],
    [0.0, 0.3, 0.1, 0.3, 0.2, 0.3],
]
GRID_NAMES = ["y_1", "y_2", "y_3", "y_4", "y_5"]
GRID_PAIRS = ["(a1,a2)", "(a1,a3)", "(a1,a4)", "(a2,a3)", "(a2,a4)", "(a3,a4)"]

LABELS = ("a", "b", "c", "d", "e")
NUM_DOMAIN = (0.0, 20.0)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def hair_height_kb():
    from minsetplus.io import read_kb

    return read_kb(DATA / "hair_height.json")


# ---- strategies -----------------------------------------------------------

# Integer endpoints keep exact arithmetic in the oracles; point intervals allowed.
interval = st.tuples(st.integers(0, 20), st.integers(0, 20)).map(
    lambda t: (float(min(t)), float(max(t)))
)
numeric_sets = st.lists(interval, min_size=0, max_size=4).map(ValueSet.numeric)
categorical_sets = st.frozensets(st.sampled_from(LABELS), max_size=len(LABELS)).map(
    ValueSet.categorical
)
NUM_SPEC = VariableSpec("x", NUMERIC, NUM_DOMAIN)
CAT_SPEC = VariableSpec("c", CATEGORICAL, LABELS)


# ---- random knowledge bases ---------------------------------------------

def random_value(rng: random.Random, spec: VariableSpec) -> ValueSet:
    if spec.is_categorical:
        k = rng.randint(1, min(3, len(spec.domain)))
        return ValueSet.categorical(rng.sample(spec.domain, k))
    lo, hi = spec.domain
    pieces = []
    for _ in range(rng.choice((1, 1, 1, 2))):
        a = rng.randint(int(lo), int(hi))
        b = min(int(hi), a + rng.choice((0, 1, 2, 3, 5, 8)))
        pieces.append((a, b))
    return ValueSet.numeric(pieces)


def random_kb(seed: int, max_objects: int = 8, max_vars: int = 10) -> KnowledgeBase:
    """Small mixed KB with heavy value reuse so ties and redundancy actually occur."""
    rng = random.Random(seed)
    m = rng.randint(2, max_objects)
    n = rng.randint(1, max_vars)
    variables = []
    for l in range(n):
        if rng.random() < 0.5:
            variables.append(VariableSpec(f"v{l}", CATEGORICAL, LABELS[: rng.randint(2, 5)]))
        else:
            variables.append(VariableSpec(f"v{l}", NUMERIC, (0.0, 12.0)))
    pools = [[random_value(rng, s) for _ in range(rng.randint(1, 4))] for s in variables]
    assertions = [
        Assertion(f"o{i}", [rng.choice(pool) for pool in pools]) for i in range(m)
    ]
    return KnowledgeBase(variables, assertions)


# ---- oracles ---------------------------------------------------------------

def brute_cells(kb, score):
    """Cell grid by direct double loop, independent of build_matrix."""
    return [
        [score(a.values[l], b.values[l], kb.variables[l])
         for a, b in itertools.combinations(kb.assertions, 2)]
        for l in range(kb.n)
    ]


def brute_dp(cells, subset):
    if not subset:
        return 0.0
    return sum(max(cells[l][p] for l in subset) for p in range(len(cells[0])))


def brute_odp(cells, l, others):
    total = 0.0
    for p in range(len(cells[0])):
        best = max((cells[q][p] for q in others), default=0.0)
        total += max(cells[l][p] - best, 0.0)
    return total


def subsets_reaching_total(cells, tol=1e-9):
    n = len(cells)
    total = brute_dp(cells, range(n))
    return [
        set(c)
        for r in range(n + 1)
        for c in itertools.combinations(range(n), r)
        if brute_dp(cells, c) >= total - tol
    ]


CLUSTER_KINDS = {"num": "interval", "pts": "numeric-point-set", "cat": "categorical-set",
                 "flag": "boolean"}


def random_table(seed):
    """Clustered table with one column per output kind and a few missing cells."""
    rng = np.random.default_rng(seed)
    variables = [
        VariableSpec("num", NUMERIC, (0.0, 50.0)),
        VariableSpec("pts", NUMERIC, (0.0, 50.0)),
        VariableSpec("cat", CATEGORICAL, tuple("pqrst")),
        VariableSpec("flag", CATEGORICAL, ("no", "yes")),
    ]
    n_clusters = int(rng.integers(2, 6))
    rows, clusters = [], []
    for c in range(n_clusters):
        centre = rng.uniform(5, 45)
        for _ in range(int(rng.integers(1, 12))):
            rows.append((
                float(np.clip(centre + rng.normal(0, 4), 0, 50)),
                float(rng.integers(0, 51)),
                str(rng.choice(list("pqrst"))),
                str(rng.choice(["no", "yes"])),
            ))
            clusters.append(f"k{c}")
    for r in rng.choice(len(rows), size=min(3, len(rows)), replace=False):
        j = int(rng.integers(0, 4))
        rows[r] = rows[r][:j] + (None,) + rows[r][j + 1:]
    return IndividualTable(variables, rows, clusters)


# ---- acceptance reporting --------------------------------------------------

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = mark.args[0]
    failed = rep.failed
    store = item.config._criteria
    prev = store.get(key, (mark.args[1], True))
    store[key] = (mark.args[1], prev[1] and not failed and not rep.skipped)


def pytest_terminal_summary(terminalreporter, config):
    store = getattr(config, "_criteria", {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(store):
        title, ok = store[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {title}")
