"""Variables, value sets, assertions and knowledge bases.

A value set is what one variable takes in an assertion: either a finite set
of category labels or a canonical union of closed real intervals. All types
here are immutable once built.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DatasetError, MissingValueError

CATEGORICAL = "categorical"
NUMERIC = "numeric"
KINDS = (CATEGORICAL, NUMERIC)


@dataclass(frozen=True)
class VariableSpec:
    """A descriptive variable and its domain.

    ``domain`` is a tuple of labels for categorical variables and a
    ``(lo, hi)`` pair for numeric ones.
    """

    name: str
    kind: str
    domain: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DatasetError(f"variable {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == CATEGORICAL:
            labels = tuple(str(x) for x in self.domain)
            if not labels:
                raise DatasetError(f"variable {self.name!r}: empty categorical domain")
            if len(set(labels)) != len(labels):
                raise DatasetError(f"variable {self.name!r}: duplicate domain labels")
            object.__setattr__(self, "domain", labels)
        else:
            try:
                lo, hi = (float(x) for x in self.domain)
            except (TypeError, ValueError):
                raise DatasetError(
                    f"variable {self.name!r}: numeric domain must be [lo, hi]"
                ) from None
            if not lo <= hi:
                raise DatasetError(f"variable {self.name!r}: domain has lo > hi")
            object.__setattr__(self, "domain", (lo, hi))

    @property
    def is_categorical(self) -> bool:
        return self.kind == CATEGORICAL

    def full(self) -> "ValueSet":
        """The value set covering the whole domain."""
        if self.is_categorical:
            return ValueSet.categorical(self.domain)
        return ValueSet.numeric([self.domain])

    def in_domain(self, x) -> bool:
        if self.is_categorical:
            return x in self.domain
        lo, hi = self.domain
        return lo <= x <= hi

    @cached_property
    def domain_measure(self) -> float:
        if self.is_categorical:
            return float(len(self.domain))
        return self.domain[1] - self.domain[0]


def _canonical_intervals(intervals: Iterable[Sequence[float]]) -> Tuple[Tuple[float, float], ...]:
    pieces = []
    for iv in intervals:
        lo, hi = float(iv[0]), float(iv[1])
        if math.isnan(lo) or math.isnan(hi):
            raise DatasetError("interval endpoint is NaN")
        if lo > hi:
            raise DatasetError(f"interval [{lo}, {hi}] has lo > hi")
        pieces.append((lo, hi))
    pieces.sort()
    merged = []
    for lo, hi in pieces:
        # closed intervals that overlap or touch merge into one
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class ValueSet:
    """A canonical categorical set or interval union.

    Build instances with :meth:`categorical`, :meth:`numeric` or
    :meth:`point`; the constructors canonicalize their input.
    """

    kind: str
    categories: frozenset = frozenset()
    intervals: Tuple[Tuple[float, float], ...] = ()

    @classmethod
    def categorical(cls, labels: Iterable) -> "ValueSet":
        return cls(CATEGORICAL, frozenset(str(x) for x in labels))

    @classmethod
    def numeric(cls, intervals: Iterable[Sequence[float]]) -> "ValueSet":
        return cls(NUMERIC, intervals=_canonical_intervals(intervals))

    @classmethod
    def point(cls, x: float) -> "ValueSet":
        return cls.numeric([(x, x)])

    @classmethod
    def empty(cls, kind: str) -> "ValueSet":
        return cls(kind)

    @property
    def is_categorical(self) -> bool:
        return self.kind == CATEGORICAL

    @property
    def is_empty(self) -> bool:
        return not (self.categories or self.intervals)

    @cached_property
    def sorted_categories(self) -> Tuple[str, ...]:
        return tuple(sorted(self.categories))

    @cached_property
    def flat(self) -> Tuple[float, ...]:
        """Endpoints as ``(lo0, hi0, lo1, hi1, ...)``, the kernel input format."""
        return tuple(x for iv in self.intervals for x in iv)

    @cached_property
    def measure(self) -> float:
        if self.is_categorical:
            return float(len(self.categories))
        return math.fsum(hi - lo for lo, hi in self.intervals)

    @property
    def size(self) -> int:
        """Number of categories or interval pieces."""
        return len(self.categories) if self.is_categorical else len(self.intervals)

    def span(self) -> Optional[Tuple[float, float]]:
        if not self.intervals:
            return None
        return self.intervals[0][0], self.intervals[-1][1]

    def to_json(self) -> list:
        if self.is_categorical:
            return list(self.sorted_categories)
        return [[lo, hi] for lo, hi in self.intervals]

    def __str__(self) -> str:
        if self.is_categorical:
            return "{" + ", ".join(self.sorted_categories) + "}"
        if not self.intervals:
            return "{}"
        return " U ".join(f"[{lo:g}, {hi:g}]" for lo, hi in self.intervals)


def _check_same_kind(u: ValueSet, v: ValueSet) -> None:
    if u.kind != v.kind:
        raise DatasetError(f"cannot combine a {u.kind} value set with a {v.kind} one")


def mu(v: ValueSet) -> float:
    """Number of categories, or total length of the interval union."""
    return v.measure


def intersect(u: ValueSet, v: ValueSet) -> ValueSet:
    _check_same_kind(u, v)
    if u.is_categorical:
        return ValueSet(u.kind, u.categories & v.categories)
    out = []
    i = j = 0
    a, b = u.intervals, v.intervals
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return ValueSet.numeric(out)


def union_(u: ValueSet, v: ValueSet) -> ValueSet:
    _check_same_kind(u, v)
    if u.is_categorical:
        return ValueSet(u.kind, u.categories | v.categories)
    return ValueSet.numeric(u.intervals + v.intervals)


def complement(v: ValueSet, spec: VariableSpec) -> ValueSet:
    """Domain minus ``v``, keeping the shared boundary points (closed convention)."""
    if v.kind != spec.kind:
        raise DatasetError(f"value set kind {v.kind} does not match variable {spec.name!r}")
    if v.is_categorical:
        return ValueSet.categorical(x for x in spec.domain if x not in v.categories)
    if not v.intervals:
        return spec.full()
    lo, hi = spec.domain
    out = []
    prev = lo
    for a, b in v.intervals:
        if a > prev:
            out.append((prev, a))
        prev = max(prev, b)
    if prev < hi:
        out.append((prev, hi))
    return ValueSet.numeric(out)


def contains(v: ValueSet, x) -> bool:
    if v.is_categorical:
        return str(x) in v.categories
    ivs = v.intervals
    i = bisect.bisect_right(ivs, (x, math.inf)) - 1
    return i >= 0 and ivs[i][0] <= x <= ivs[i][1]


def is_missing(x) -> bool:
    return x is None or (isinstance(x, float) and math.isnan(x))


@dataclass(frozen=True)
class Assertion:
    """A named conjunction of elementary events, one value set per variable."""

    name: str
    values: Tuple[ValueSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


def evaluate(a: Assertion, row: Sequence) -> bool:
    """True iff every variable value of ``row`` lies in the assertion's value set."""
    if len(row) != len(a.values):
        raise DatasetError(
            f"row has {len(row)} values, assertion {a.name!r} has {len(a.values)}"
        )
    for v, x in zip(a.values, row):
        if is_missing(x):
            raise MissingValueError("missing value: impute before evaluation")
        if not contains(v, x):
            return False
    return True


@dataclass(frozen=True)
class KnowledgeBase:
    """Variables plus assertions; assertion pairs are enumerated lexicographically."""

    variables: Tuple[VariableSpec, ...]
    assertions: Tuple[Assertion, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "assertions", tuple(self.assertions))
        if not self.variables:
            raise DatasetError("a knowledge base needs at least one variable")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise DatasetError("duplicate variable names")
        seen = set()
        for a in self.assertions:
            if a.name in seen:
                raise DatasetError(f"duplicate assertion name {a.name!r}")
            seen.add(a.name)
            if len(a.values) != len(self.variables):
                raise DatasetError(
                    f"assertion {a.name!r} has {len(a.values)} values for "
                    f"{len(self.variables)} variables"
                )
            for spec, v in zip(self.variables, a.values):
                _check_value_in_domain(a.name, spec, v)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def k(self) -> int:
        m = len(self.assertions)
        return m * (m - 1) // 2

    @cached_property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(combinations(range(len(self.assertions)), 2))

    @property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def pair_labels(self) -> list:
        names = [a.name for a in self.assertions]
        return [f"({names[i]},{names[j]})" for i, j in self.pairs]

    def variable_index(self, name: str) -> int:
        try:
            return self.variable_names.index(name)
        except ValueError:
            raise DatasetError(f"unknown variable {name!r}") from None

    def restrict(self, indices: Iterable[int]) -> "KnowledgeBase":
        """The knowledge base described only by the given variables (in the given order)."""
        idx = list(indices)
        if not idx:
            raise DatasetError("cannot restrict a knowledge base to zero variables")
        return KnowledgeBase(
            [self.variables[i] for i in idx],
            [Assertion(a.name, [a.values[i] for i in idx]) for a in self.assertions],
        )


def _check_value_in_domain(owner: str, spec: VariableSpec, v: ValueSet) -> None:
    if v.kind != spec.kind:
        raise DatasetError(
            f"{owner!r}: variable {spec.name!r} is {spec.kind}, got a {v.kind} value"
        )
    if v.is_categorical:
        extra = v.categories.difference(spec.domain)
        if extra:
            raise DatasetError(
                f"{owner!r}: labels {sorted(extra)} not in domain of {spec.name!r}"
            )
    elif v.intervals:
        lo, hi = spec.domain
        if v.intervals[0][0] < lo or v.intervals[-1][1] > hi:
            raise DatasetError(f"{owner!r}: {v} outside domain of {spec.name!r}")


@dataclass
class IndividualTable:
    """Observed individuals: one scalar per variable (``None`` = missing) and a cluster label.

    ``ids`` are optional display names; they default to the row index.
    """

    variables: Tuple[VariableSpec, ...]
    rows: list
    clusters: list
    ids: Optional[list] = None

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.rows = [tuple(r) for r in self.rows]
        self.clusters = [str(c) for c in self.clusters]
        if self.ids is None:
            self.ids = [str(i) for i in range(len(self.rows))]
        else:
            self.ids = [str(i) for i in self.ids]
        if not (len(self.rows) == len(self.clusters) == len(self.ids)):
            raise DatasetError("rows, clusters and ids must have equal length")
        n = len(self.variables)
        for r, row in enumerate(self.rows):
            if len(row) != n:
                raise DatasetError(f"row {r} has {len(row)} values, expected {n}")
            for spec, x in zip(self.variables, row):
                if not is_missing(x) and not spec.in_domain(x):
                    raise DatasetError(
                        f"row {r}: value {x!r} outside domain of {spec.name!r}"
                    )

    @property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def cluster_labels(self) -> list:
        """Distinct cluster labels in order of first appearance."""
        return list(dict.fromkeys(self.clusters))

    def members(self, label: str) -> list:
        return [i for i, c in enumerate(self.clusters) if c == label]

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def has_missing(self) -> bool:
        return any(is_missing(x) for row in self.rows for x in row)
