"""Greedy selection of a minimal discriminating variable subset.

Three entry points share one control flow:

* :func:`minset_plus` works on a cached discrimination matrix;
* :func:`minset_partial_naive` recomputes every score from the value sets;
* :func:`minset` is the naive route with boolean disjointness as the score.

The loop seeds the selection with the indispensable variables, then adds the
variable with the highest original discrimination power until the target is
reached, dropping variables that became redundant after each addition.
"""
from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from . import discrimination as dm
from .discrimination import TOL
from .errors import SelectionError
from .measures import BOOLEAN, Measure
from .model import KnowledgeBase

log = logging.getLogger(__name__)


@dataclass
class Step:
    action: str  # "indispensable", "select" or "eliminate"
    variable: int
    odp: float
    dp_after: float


@dataclass
class SelectionResult:
    selected: List[int]
    dp_selected: float
    dp_total: float
    reduction_pct: float
    trace: List[Step] = field(default_factory=list)
    variable_names: List[str] = field(default_factory=list)
    algorithm: str = ""
    measure: dict = field(default_factory=dict)
    theta: float = 1.0
    elapsed_ms: float = 0.0
    degenerate: bool = False
    diagnostic: str = ""

    @property
    def selected_names(self) -> List[str]:
        return [self.variable_names[l] for l in self.selected]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["selected_names"] = self.selected_names
        d["trace"] = [
            dict(asdict(s), name=self.variable_names[s.variable]) for s in self.trace
        ]
        return d

    def trace_lines(self) -> List[str]:
        """Human-readable narrative of the run, one line per step."""
        lines = [f"DP(Y) = {self.dp_total:.6g}"]
        for s in self.trace:
            name = self.variable_names[s.variable]
            if s.action == "indispensable":
                lines.append(f"{name} is indispensable; DP(Yd) = {s.dp_after:.6g}")
            elif s.action == "select":
                lines.append(
                    f"select {name} (ODP {s.odp:.6g}); DP(Yd) = {s.dp_after:.6g}"
                )
            else:
                lines.append(
                    f"eliminate {name} (redundant, ODP {s.odp:.6g}); "
                    f"DP(Yd) = {s.dp_after:.6g}"
                )
        lines.append("selected: " + ", ".join(self.selected_names))
        return lines


class _MatrixEngine:
    """DP/ODP through the cached matrix and ``max_yd``."""

    def __init__(self, M: dm.DiscriminationMatrix):
        M.reset()
        self.M = M
        self.n = M.n
        self._dp_var = M.cells.sum(axis=1)

    def dp_total(self) -> float:
        return dm.dp_total(self.M)

    def dp_variable(self, l: int) -> float:
        return float(self._dp_var[l])

    def indispensables(self) -> List[int]:
        return dm.indispensables(self.M)

    @property
    def selected(self) -> List[int]:
        return self.M.selected

    def odp_candidates(self, candidates: List[int]) -> np.ndarray:
        return dm.odp_all(self.M, candidates)

    def add(self, l: int) -> None:
        dm.update_max_yd(self.M, l)

    def remove(self, l: int) -> None:
        self.M.remove(l)

    def dp_current(self, previous: float, gained: float) -> float:
        # DP(Yd + l) = DP(Yd) + ODP(l, Yd), no rescan needed
        return previous + gained

    def leave_one_out(self) -> np.ndarray:
        return dm.redundant_in_selection(self.M)

    def odp_against(self, l: int, others: List[int]) -> float:
        return dm.odp_against(self.M, l, others)


class _NaiveEngine:
    """DP/ODP recomputed from the value sets on every call; nothing is cached."""

    def __init__(self, kb: KnowledgeBase, measure: Measure):
        if kb.k == 0:
            raise SelectionError("nothing to discriminate: fewer than two assertions")
        self.kb = kb
        self.measure = measure
        self.n = kb.n
        self.selected: List[int] = []

    def g(self, l: int, i: int, j: int) -> float:
        kb = self.kb
        return self.measure(
            kb.assertions[i].values[l], kb.assertions[j].values[l], kb.variables[l]
        )

    def _best(self, Yp, i, j) -> float:
        best = 0.0
        for q in Yp:
            v = self.g(q, i, j)
            if v > best:
                best = v
        return best

    def dp_set(self, Yd) -> float:
        return sum(self._best(Yd, i, j) for i, j in self.kb.pairs)

    def dp_total(self) -> float:
        return self.dp_set(range(self.n))

    def dp_variable(self, l: int) -> float:
        return sum(self.g(l, i, j) for i, j in self.kb.pairs)

    def odp_against(self, l: int, Yp) -> float:
        total = 0.0
        for i, j in self.kb.pairs:
            d = self.g(l, i, j) - self._best(Yp, i, j)
            if d > 0.0:
                total += d
        return total

    def indispensables(self) -> List[int]:
        out = []
        for l in range(self.n):
            others = [q for q in range(self.n) if q != l]
            for i, j in self.kb.pairs:
                gl = self.g(l, i, j)
                if gl > 0.0 and gl - self._best(others, i, j) > TOL:
                    out.append(l)
                    break
        return out

    def odp_candidates(self, candidates: List[int]) -> np.ndarray:
        return np.array([self.odp_against(l, self.selected) for l in candidates])

    def add(self, l: int) -> None:
        self.selected.append(l)

    def remove(self, l: int) -> None:
        self.selected.remove(l)

    def dp_current(self, previous: float, gained: float) -> float:
        return self.dp_set(self.selected)

    def leave_one_out(self) -> np.ndarray:
        sel = self.selected
        return np.array([self.odp_against(s, [q for q in sel if q != s]) for s in sel])


def _pick(engine, candidates: List[int], scores: np.ndarray) -> int:
    """Highest ODP; ties (within TOL) go to larger standalone DP, then lower index."""
    best_score = float(scores.max())
    tied = [c for c, s in zip(candidates, scores) if s >= best_score - TOL]
    if len(tied) == 1:
        return tied[0]
    dps = {c: engine.dp_variable(c) for c in tied}
    top = max(dps.values())
    return min(c for c in tied if dps[c] >= top - TOL)


def _eliminate(engine, trace: List[Step], dp: float, protected: set) -> float:
    """Remove selected variables whose ODP against the others is <= TOL, in insertion order."""
    loo = engine.leave_one_out()
    if len(loo) == 0 or loo.min() > TOL:
        return dp
    # removing a variable only raises the ODP of the rest, so one ordered pass suffices
    for s in list(engine.selected):
        others = [q for q in engine.selected if q != s]
        score = engine.odp_against(s, others)
        if score <= TOL:
            assert s not in protected, "an indispensable variable was found redundant"
            engine.remove(s)
            dp = dp - score
            trace.append(Step("eliminate", s, score, dp))
    return dp


def _run(engine, theta: float, names: List[str]) -> SelectionResult:
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    total = engine.dp_total()
    n = engine.n
    if total <= TOL:
        return SelectionResult(
            selected=[], dp_selected=0.0, dp_total=total, reduction_pct=0.0,
            variable_names=names, theta=theta, degenerate=True,
            diagnostic="no variable discriminates any pair of assertions",
        )
    trace: List[Step] = []
    dp = 0.0
    indisp = engine.indispensables()
    for l in indisp:
        gained = float(engine.odp_candidates([l])[0])
        engine.add(l)
        dp = engine.dp_current(dp, gained)
        trace.append(Step("indispensable", l, gained, dp))
    protected = set(indisp)

    target = theta * total
    while dp < target - TOL:
        candidates = [l for l in range(n) if l not in engine.selected]
        if not candidates:
            break
        scores = engine.odp_candidates(candidates)
        if float(scores.max()) <= TOL:
            log.warning("no candidate adds discrimination; stopping at DP %.6g", dp)
            break
        best = _pick(engine, candidates, scores)
        gained = float(scores[candidates.index(best)])
        engine.add(best)
        dp = engine.dp_current(dp, gained)
        trace.append(Step("select", best, gained, dp))
        dp = _eliminate(engine, trace, dp, protected)

    selected = list(engine.selected)
    return SelectionResult(
        selected=selected,
        dp_selected=dp,
        dp_total=total,
        reduction_pct=100.0 * (1.0 - len(selected) / n),
        trace=trace,
        variable_names=names,
        theta=theta,
    )


def select_from_matrix(M: dm.DiscriminationMatrix, theta: float = 1.0) -> SelectionResult:
    """Run the greedy loop on an existing matrix (its selection state is reset)."""
    res = _run(_MatrixEngine(M), theta, list(M.variable_names))
    res.algorithm = "minset-plus"
    return res


def minset_plus(
    kb: KnowledgeBase, measure: Optional[Measure] = None, theta: float = 1.0
) -> SelectionResult:
    """Matrix-backed selection; the default score is the partial (Jaccard) one."""
    measure = measure or Measure()
    t0 = time.perf_counter()
    M = dm.build_matrix(kb, measure)
    res = select_from_matrix(M, theta)
    res.elapsed_ms = (time.perf_counter() - t0) * 1e3
    res.measure = measure.to_json()
    return res


def minset_partial_naive(
    kb: KnowledgeBase, theta: float = 1.0, measure: Optional[Measure] = None
) -> SelectionResult:
    """Same selection as :func:`minset_plus`, recomputing every score on demand."""
    measure = measure or Measure()
    t0 = time.perf_counter()
    res = _run(_NaiveEngine(kb, measure), theta, list(kb.variable_names))
    res.elapsed_ms = (time.perf_counter() - t0) * 1e3
    res.algorithm = "minset-partial"
    res.measure = measure.to_json()
    return res


def minset(kb: KnowledgeBase) -> SelectionResult:
    """Boolean selection: a pair counts as discriminated only by disjoint value sets."""
    res = minset_partial_naive(kb, 1.0, Measure(BOOLEAN))
    res.algorithm = "minset"
    return res
