"""Quality indicators of a knowledge base measured on real individuals."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet, List, Optional

from . import discrimination as dm
from .errors import DatasetError, SelectionError
from .measures import BOOLEAN, Measure
from .model import Assertion, IndividualTable, KnowledgeBase, VariableSpec, evaluate
from .selection import SelectionResult


def _column_map(variables, t: IndividualTable) -> List[int]:
    names = t.variable_names
    cols = []
    for v in variables:
        if v.name not in names:
            raise DatasetError(f"variable {v.name!r} is absent from the individual table")
        cols.append(names.index(v.name))
    return cols


def real_extent(
    a: Assertion, t: IndividualTable, variables: Optional[List[VariableSpec]] = None
) -> FrozenSet[int]:
    """Row indices of ``t`` satisfying ``a``.

    ``variables`` names the assertion's variables when they differ from the
    table's (e.g. after selection); values are matched by variable name.
    """
    variables = list(variables) if variables is not None else list(t.variables)
    if len(variables) != len(a.values):
        raise DatasetError(f"assertion {a.name!r} does not match the given variables")
    cols = _column_map(variables, t)
    return frozenset(
        r for r, row in enumerate(t.rows) if evaluate(a, [row[c] for c in cols])
    )


def extents(kb: KnowledgeBase, t: IndividualTable) -> List[FrozenSet[int]]:
    return [real_extent(a, t, kb.variables) for a in kb.assertions]


def pair_extent_scores(kb: KnowledgeBase, t: IndividualTable) -> List[float]:
    """Per-pair ``1 - |ext_i & ext_j| / |ext_i | ext_j|``; an empty union scores 1."""
    ext = extents(kb, t)
    out = []
    for i, j in kb.pairs:
        union = len(ext[i] | ext[j])
        out.append(1.0 if union == 0 else 1.0 - len(ext[i] & ext[j]) / union)
    return out


def extent_discrimination(kb: KnowledgeBase, t: IndividualTable) -> float:
    """Average per-pair extent discrimination over all assertion pairs."""
    if kb.k == 0:
        raise SelectionError("nothing to discriminate: fewer than two assertions")
    if not t.rows:
        raise DatasetError("the individual table is empty")
    scores = pair_extent_scores(kb, t)
    return sum(scores) / len(scores)


def overlap_percentage(kb: KnowledgeBase) -> float:
    """Fraction of assertion pairs that no variable separates by disjoint value sets."""
    if kb.k == 0:
        raise SelectionError("nothing to discriminate: fewer than two assertions")
    M = dm.build_matrix(kb, Measure(BOOLEAN))
    return 1.0 - dm.dp_total(M) / kb.k


def overlap_from_matrix(M: dm.DiscriminationMatrix) -> float:
    """Same fraction read off a score grid: a pair counts only where some cell is 1."""
    if M.k == 0:
        raise SelectionError("nothing to discriminate: the matrix has no pair columns")
    return 1.0 - dm.dp_total(dm.boolean_view(M)) / M.k


@dataclass
class QualityReport:
    overlap_pct: float
    extent_discrimination_pct: float
    extent_intersection_avg: float
    extent_discrimination_original: float
    extent_intersection_original: float
    delta_intersection: float
    dp_selected: float
    dp_total: float
    reduction_pct: float
    n_selected: int
    degenerate: bool = False
    pair_scores: Dict[str, float] = field(default_factory=dict)
    extents: Dict[str, List[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    CSV_FIELDS = (
        "overlap_pct",
        "extent_discrimination_pct",
        "extent_intersection_avg",
        "extent_discrimination_original",
        "extent_intersection_original",
        "delta_intersection",
        "dp_selected",
        "dp_total",
        "reduction_pct",
        "n_selected",
        "degenerate",
    )

    def csv_row(self) -> dict:
        return {f: getattr(self, f) for f in self.CSV_FIELDS}


def quality_report(
    original: KnowledgeBase,
    result: SelectionResult,
    reduced: Optional[KnowledgeBase],
    t: IndividualTable,
) -> QualityReport:
    """Collect the quality indicators of a selection.

    Extent metrics are computed on ``reduced``; when the selection is empty
    (``reduced`` is None) no individual can be told apart, so every extent
    is the whole table.
    """
    before = extent_discrimination(original, t)
    if reduced is None or not result.selected:
        ext = {a.name: list(t.ids) for a in original.assertions}
        labels = original.pair_labels()
        pairs = {lab: (1.0 if not t.rows else 0.0) for lab in labels}
        after = sum(pairs.values()) / len(pairs)
    else:
        if [v.name for v in reduced.variables] != result.selected_names:
            raise DatasetError("reduced knowledge base does not match the selection")
        after = extent_discrimination(reduced, t)
        ext = {
            a.name: [t.ids[r] for r in sorted(e)]
            for a, e in zip(reduced.assertions, extents(reduced, t))
        }
        pairs = dict(zip(reduced.pair_labels(), pair_extent_scores(reduced, t)))
    return QualityReport(
        overlap_pct=overlap_percentage(original),
        extent_discrimination_pct=after,
        extent_intersection_avg=1.0 - after,
        extent_discrimination_original=before,
        extent_intersection_original=1.0 - before,
        delta_intersection=abs((1.0 - after) - (1.0 - before)),
        dp_selected=result.dp_selected,
        dp_total=result.dp_total,
        reduction_pct=result.reduction_pct,
        n_selected=len(result.selected),
        degenerate=result.degenerate,
        pair_scores=pairs,
        extents=ext,
    )
