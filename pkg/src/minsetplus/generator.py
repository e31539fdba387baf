"""Symbolic objects from clustered individuals, and individuals from symbolic objects.

Also holds missing-value imputation and a seeded random knowledge-base
builder used by the benchmark and sweep harnesses.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence

import numpy as np

from .errors import DatasetError
from .model import (
    CATEGORICAL,
    NUMERIC,
    Assertion,
    IndividualTable,
    KnowledgeBase,
    ValueSet,
    VariableSpec,
    is_missing,
)

log = logging.getLogger(__name__)

BOOLEAN_KIND = "boolean"
CATEGORY_SET = "categorical-set"
POINT_SET = "numeric-point-set"
INTERVAL = "interval"
OUTPUT_KINDS = (BOOLEAN_KIND, CATEGORY_SET, POINT_SET, INTERVAL)


@dataclass
class GenerationSpec:
    """Parameters of both generators.

    ``kinds`` maps a variable name to its output kind; variables left out get
    ``categorical-set`` (categorical) or ``interval`` (numeric). ``counts``
    gives individuals per assertion, either one int for all or a mapping by
    assertion name.
    """

    kinds: Dict[str, str] = field(default_factory=dict)
    refine: bool = False
    seed: int = 0
    overlap_target: float = 0.0
    counts: object = 10

    def __post_init__(self):
        for name, kind in self.kinds.items():
            if kind not in OUTPUT_KINDS:
                raise DatasetError(f"variable {name!r}: unknown output kind {kind!r}")
        if not 0.0 <= self.overlap_target < 1.0:
            raise DatasetError("overlap_target must lie in [0, 1)")

    def kind_for(self, spec: VariableSpec) -> str:
        kind = self.kinds.get(
            spec.name, CATEGORY_SET if spec.is_categorical else INTERVAL
        )
        if spec.is_categorical:
            if kind not in (BOOLEAN_KIND, CATEGORY_SET):
                raise DatasetError(f"{kind} output needs a numeric variable: {spec.name!r}")
            if kind == BOOLEAN_KIND and len(spec.domain) != 2:
                raise DatasetError(
                    f"boolean output needs a two-label domain: {spec.name!r}"
                )
        elif kind not in (POINT_SET, INTERVAL):
            raise DatasetError(f"{kind} output needs a categorical variable: {spec.name!r}")
        return kind

    def count_for(self, name: str) -> int:
        c = self.counts[name] if isinstance(self.counts, Mapping) else self.counts
        c = int(c)
        if c < 1:
            raise DatasetError(f"count for {name!r} must be at least 1")
        return c


def impute_missing(t: IndividualTable) -> IndividualTable:
    """Replace missing numeric cells by the column mean, categorical ones by the mode."""
    if not t.has_missing():
        return t
    fills = []
    for j, spec in enumerate(t.variables):
        present = [x for x in t.column(j) if not is_missing(x)]
        if not present:
            raise DatasetError(f"column {spec.name!r} has no observed value to impute from")
        if spec.is_categorical:
            counts = Counter(present)
            top = max(counts.values())
            fills.append(min(label for label, c in counts.items() if c == top))
        else:
            fills.append(math.fsum(present) / len(present))
    rows = [
        tuple(fills[j] if is_missing(x) else x for j, x in enumerate(row))
        for row in t.rows
    ]
    return IndividualTable(t.variables, rows, list(t.clusters), list(t.ids))


def refine_interval(own: Sequence[float], foreign: Sequence[float], domain=None) -> ValueSet:
    """Cut ``[min(own), max(own)]`` at foreign values, dropping pieces with no own value.

    Foreign values equal to an own value, or outside the hull, do not cut.
    ``domain`` is accepted for signature symmetry and only used to validate.
    """
    own = sorted(set(float(x) for x in own))
    if not own:
        raise DatasetError("refine_interval needs at least one own value")
    lo, hi = own[0], own[-1]
    if domain is not None and (lo < domain[0] or hi > domain[1]):
        raise DatasetError("own values outside the variable domain")
    own_set = set(own)
    cuts = sorted({x for x in foreign if lo < x < hi and x not in own_set})
    if not cuts:
        return ValueSet.numeric([(lo, hi)])
    bounds = [lo] + cuts + [hi]
    pieces = []
    k = 0
    for a, b in zip(bounds, bounds[1:]):
        while k < len(own) and own[k] < a:
            k += 1
        if k < len(own) and own[k] <= b:
            pieces.append((a, b))
    return ValueSet.numeric(pieces)


def generate_objects(t: IndividualTable, spec: Optional[GenerationSpec] = None) -> KnowledgeBase:
    """One assertion per cluster, describing the cluster's members."""
    spec = spec or GenerationSpec()
    if t.has_missing():
        raise DatasetError("table has missing values: impute before generating objects")
    labels = t.cluster_labels()
    if not labels:
        raise DatasetError("no clusters in the individual table")
    kinds = [spec.kind_for(v) for v in t.variables]
    members = {c: t.members(c) for c in labels}
    assertions = []
    for c in labels:
        idx = members[c]
        if not idx:
            raise DatasetError(f"cluster {c!r} is empty")
        values = []
        for j, var in enumerate(t.variables):
            own = [t.rows[r][j] for r in idx]
            kind = kinds[j]
            if var.is_categorical:
                values.append(ValueSet.categorical(own))
            elif kind == POINT_SET:
                values.append(ValueSet.numeric([(x, x) for x in own]))
            elif spec.refine:
                foreign = [t.rows[r][j] for r, cl in enumerate(t.clusters) if cl != c]
                values.append(refine_interval(own, foreign, var.domain))
            else:
                values.append(ValueSet.numeric([(min(own), max(own))]))
        assertions.append(Assertion(c, values))
    return KnowledgeBase(t.variables, assertions)


def _sample_value(v: ValueSet, rng: np.random.Generator):
    if v.is_empty:
        raise DatasetError("cannot sample from an empty value set")
    if v.is_categorical:
        cats = v.sorted_categories
        return cats[int(rng.integers(len(cats)))]
    ivs = v.intervals
    lengths = np.array([hi - lo for lo, hi in ivs])
    total = lengths.sum()
    if total > 0.0:
        k = int(rng.choice(len(ivs), p=lengths / total))
    else:
        k = int(rng.integers(len(ivs)))
    lo, hi = ivs[k]
    return float(lo) if hi == lo else float(rng.uniform(lo, hi))


def generate_individuals(kb: KnowledgeBase, spec: Optional[GenerationSpec] = None) -> IndividualTable:
    """Sample individuals for each assertion, with optional foreign draws.

    Each value is drawn uniformly from the own assertion's value set, or,
    with probability ``overlap_target``, from the value set of another
    assertion chosen uniformly.
    """
    spec = spec or GenerationSpec()
    m = len(kb.assertions)
    p = spec.overlap_target
    if m < 2 and p > 0.0:
        raise DatasetError("foreign draws need at least two assertions")
    rng = np.random.default_rng(spec.seed)
    rows, clusters, ids = [], [], []
    for a_idx, a in enumerate(kb.assertions):
        for r in range(spec.count_for(a.name)):
            row = []
            for l in range(kb.n):
                src = a_idx
                if p > 0.0 and rng.random() < p:
                    src = int(rng.integers(m - 1))
                    if src >= a_idx:
                        src += 1
                row.append(_sample_value(kb.assertions[src].values[l], rng))
            rows.append(tuple(row))
            clusters.append(a.name)
            ids.append(f"{a.name}_{r}")
    return IndividualTable(kb.variables, rows, clusters, ids)


def random_knowledge_base(
    n_objects: int,
    n_vars: int,
    seed: int = 0,
    n_categorical: int = 0,
    n_labels: int = 8,
    width: tuple = (2.0, 10.0),
    domain: tuple = (0.0, 100.0),
    distinct: float = 1.0,
) -> KnowledgeBase:
    """Seeded synthetic knowledge base.

    For each (object, variable) cell, with probability ``distinct`` the
    object gets a distinctive value: a narrow interval (width drawn from
    ``width``) placed uniformly in ``domain``, or one label other than
    ``c0``. Otherwise it gets a core value shared by all core objects of
    that variable: an interval around the middle of the domain, or ``c0``
    plus possibly one more label. Variables from ``n_vars - n_categorical``
    on are categorical.
    """
    if n_objects < 1 or n_vars < 1 or not 0 <= n_categorical <= n_vars:
        raise ValueError("need n_objects >= 1, n_vars >= 1, 0 <= n_categorical <= n_vars")
    if n_labels < 2:
        raise ValueError("need at least two labels")
    rng = np.random.default_rng(seed)
    lo, hi = domain
    span = hi - lo
    variables = []
    for l in range(n_vars):
        if l < n_vars - n_categorical:
            variables.append(VariableSpec(f"y{l + 1}", NUMERIC, (lo, hi)))
        else:
            labels = tuple(f"c{c}" for c in range(n_labels))
            variables.append(VariableSpec(f"y{l + 1}", CATEGORICAL, labels))
    assertions = []
    for i in range(n_objects):
        values = []
        for var in variables:
            special = rng.random() < distinct
            if var.is_categorical:
                if special:
                    values.append(ValueSet.categorical([var.domain[int(rng.integers(1, n_labels))]]))
                else:
                    extra = var.domain[int(rng.integers(n_labels))]
                    picks = {var.domain[0]} | ({extra} if rng.random() < 0.5 else set())
                    values.append(ValueSet.categorical(picks))
            elif special:
                w = rng.uniform(*width)
                start = rng.uniform(lo, hi - w)
                values.append(ValueSet.numeric([(start, start + w)]))
            else:
                start = lo + span * rng.uniform(0.3, 0.4)
                end = lo + span * rng.uniform(0.6, 0.7)
                values.append(ValueSet.numeric([(start, end)]))
        assertions.append(Assertion(f"a{i + 1}", values))
    return KnowledgeBase(variables, assertions)
