"""Per-variable discrimination scores between two value sets.

Every measure here is reflexive (``m(v, v) == 0``) and symmetric. The
:class:`Measure` wrapper turns any of them into a matrix cell value in
``[0, 1]``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .model import ValueSet, VariableSpec, complement, intersect, _check_same_kind

BOOLEAN = "boolean"
JACCARD = "jaccard"
DE_CARVALHO = "de_carvalho"
ICHINO_YAGUCHI = "ichino_yaguchi"

_ALIASES = {
    "boolean": BOOLEAN,
    "comp": BOOLEAN,
    "jaccard": JACCARD,
    "de_carvalho": DE_CARVALHO,
    "de-carvalho": DE_CARVALHO,
    "ichino": ICHINO_YAGUCHI,
    "ichino_yaguchi": ICHINO_YAGUCHI,
    "ichino-yaguchi": ICHINO_YAGUCHI,
}


def _overlap(u: ValueSet, v: ValueSet):
    """(measure of u & v, number of pieces of u & v)."""
    if u.is_categorical:
        n = len(u.categories & v.categories)
        return float(n), n
    return kernels.interval_overlap(u.flat, v.flat)


def comp(u: ValueSet, v: ValueSet) -> int:
    """1 if the value sets are disjoint, else 0.

    Two empty sets count as equal, not disjoint, so the score stays reflexive.
    """
    _check_same_kind(u, v)
    if u.is_empty and v.is_empty:
        return 0
    if u.is_categorical:
        return 0 if u.categories & v.categories else 1
    return 0 if kernels.interval_overlap(u.flat, v.flat)[1] else 1


def _point_ratio(u: ValueSet, v: ValueSet, common: int) -> float:
    # measure-zero operands: count distinct points instead of lengths
    total = u.size + v.size - common
    return 0.0 if total == 0 else 1.0 - common / total


def g_jaccard(u: ValueSet, v: ValueSet) -> float:
    """Partial discrimination ``1 - card(u & v) / card(u | v)``."""
    _check_same_kind(u, v)
    meet, pieces = _overlap(u, v)
    join = u.measure + v.measure - meet
    if join > 0.0:
        g = 1.0 - meet / join
        return 0.0 if g < 0.0 else (1.0 if g > 1.0 else g)
    return _point_ratio(u, v, pieces)


def de_carvalho(u: ValueSet, v: ValueSet, spec: VariableSpec) -> float:
    """Dissimilarity from the agreement/disagreement areas, via explicit complements."""
    _check_same_kind(u, v)
    both = intersect(u, v)
    agree = both.measure
    only_u = intersect(u, complement(v, spec)).measure
    only_v = intersect(complement(u, spec), v).measure
    denom = agree + only_u + only_v
    if denom > 0.0:
        return 1.0 - agree / denom
    return _point_ratio(u, v, both.size)


def _join_measure(u: ValueSet, v: ValueSet, meet: float) -> float:
    if u.is_categorical:
        return u.measure + v.measure - meet
    # union plus the bridge between the two hulls when they are apart; on
    # single intervals this is the usual convex span
    join = u.measure + v.measure - meet
    su, sv = u.span(), v.span()
    if su is not None and sv is not None:
        lo_end = min(su[1], sv[1])
        hi_start = max(su[0], sv[0])
        if hi_start > lo_end:
            join += hi_start - lo_end
    return join


def ichino_yaguchi(u: ValueSet, v: ValueSet, gamma: float = 0.5) -> float:
    """Join-minus-meet dissimilarity with the gamma correction term."""
    if not 0.0 <= gamma <= 0.5:
        raise ValueError(f"gamma must lie in [0, 0.5], got {gamma}")
    _check_same_kind(u, v)
    meet, _ = _overlap(u, v)
    join = _join_measure(u, v, meet)
    phi = join - meet + gamma * (2.0 * meet - u.measure - v.measure)
    return max(phi, 0.0)


@dataclass(frozen=True)
class Measure:
    """A named cell function for the discrimination matrix.

    Ichino-Yaguchi values are divided by the domain measure so that every
    cell lies in [0, 1].
    """

    name: str = JACCARD
    gamma: float = 0.5

    def __post_init__(self):
        try:
            object.__setattr__(self, "name", _ALIASES[self.name])
        except KeyError:
            raise ValueError(
                f"unknown measure {self.name!r}; choose from boolean, jaccard, "
                "de-carvalho, ichino"
            ) from None
        if not 0.0 <= self.gamma <= 0.5:
            raise ValueError(f"gamma must lie in [0, 0.5], got {self.gamma}")

    def __call__(self, u: ValueSet, v: ValueSet, spec: VariableSpec) -> float:
        name = self.name
        if name == JACCARD:
            return g_jaccard(u, v)
        if name == BOOLEAN:
            return float(comp(u, v))
        if name == DE_CARVALHO:
            return de_carvalho(u, v, spec)
        size = spec.domain_measure
        if size <= 0.0:
            return 0.0
        return min(ichino_yaguchi(u, v, self.gamma) / size, 1.0)

    def to_json(self) -> dict:
        d = {"name": self.name}
        if self.name == ICHINO_YAGUCHI:
            d["gamma"] = self.gamma
        return d
