"""The discrimination matrix and the DP / ODP computations on it.

Rows are variables, columns are assertion pairs in lexicographic order.
Each cell holds the discrimination score of one variable on one pair and is
computed exactly once, at build time. ``max_yd`` caches, per pair, the best
score among the currently selected variables, so that the original
discrimination power of a candidate costs one subtraction per pair.
"""
from __future__ import annotations

import csv
import io
from typing import Iterable, List, Optional, Sequence

import numpy as np

from . import kernels
from .errors import SelectionError
from .measures import Measure
from .model import KnowledgeBase

TOL = 1e-9


class DiscriminationMatrix:
    """Dense ``n_vars x k`` grid of cell scores plus the running ``max_yd`` row."""

    def __init__(
        self,
        cells,
        variable_names: Optional[Sequence[str]] = None,
        pair_labels: Optional[Sequence[str]] = None,
    ):
        cells = np.array(cells, dtype=np.float64, order="C", ndmin=2)
        if cells.ndim != 2:
            raise ValueError("cells must be a 2-d grid")
        if cells.size and (cells.min() < 0.0 or cells.max() > 1.0):
            raise ValueError("every cell must lie in [0, 1]")
        cells.flags.writeable = False
        self.cells = cells
        n, k = cells.shape
        self.variable_names = (
            list(variable_names) if variable_names is not None
            else [f"y_{l + 1}" for l in range(n)]
        )
        self.pair_labels = (
            list(pair_labels) if pair_labels is not None
            else [f"p{p}" for p in range(k)]
        )
        if len(self.variable_names) != n or len(self.pair_labels) != k:
            raise ValueError("labels do not match the cell grid shape")
        self.max_yd = np.zeros(k)
        self.selected: List[int] = []

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    @property
    def k(self) -> int:
        return self.cells.shape[1]

    def reset(self) -> None:
        self.max_yd = np.zeros(self.k)
        self.selected = []

    def _check_var(self, l: int) -> None:
        if not 0 <= l < self.n:
            raise SelectionError(f"variable index {l} out of range 0..{self.n - 1}")

    def remove(self, l: int) -> None:
        """Drop ``l`` from the selection and rebuild ``max_yd`` from the remaining rows."""
        if l not in self.selected:
            raise SelectionError(f"variable {self.variable_names[l]} is not selected")
        self.selected.remove(l)
        if self.selected:
            self.max_yd = self.cells[self.selected].max(axis=0)
        else:
            self.max_yd = np.zeros(self.k)

    def __repr__(self) -> str:
        return (
            f"DiscriminationMatrix(n={self.n}, k={self.k}, "
            f"selected={[self.variable_names[l] for l in self.selected]})"
        )


def build_matrix(kb: KnowledgeBase, measure: Optional[Measure] = None) -> DiscriminationMatrix:
    """Evaluate ``measure`` once per (variable, pair) cell."""
    measure = measure or Measure()
    if kb.k == 0:
        raise SelectionError("nothing to discriminate: fewer than two assertions")
    cells = np.empty((kb.n, kb.k))
    pairs = kb.pairs
    values = [a.values for a in kb.assertions]
    for l, spec in enumerate(kb.variables):
        row = cells[l]
        for p, (i, j) in enumerate(pairs):
            row[p] = measure(values[i][l], values[j][l], spec)
    return DiscriminationMatrix(cells, kb.variable_names, kb.pair_labels())


def dp_variable(M: DiscriminationMatrix, l: int) -> float:
    """Discrimination power of one variable: its row sum."""
    M._check_var(l)
    return float(M.cells[l].sum())


def dp_set(M: DiscriminationMatrix, Yd: Iterable[int]) -> float:
    """Sum over pairs of the best score among the variables of ``Yd``."""
    idx = sorted(set(Yd))
    if not idx:
        return 0.0
    for l in idx:
        M._check_var(l)
    return float(M.cells[idx].max(axis=0).sum())


def dp_total(M: DiscriminationMatrix) -> float:
    return dp_set(M, range(M.n))


def dp_selected(M: DiscriminationMatrix) -> float:
    """Discrimination power of the current selection, read off ``max_yd``."""
    return float(M.max_yd.sum())


def odp(M: DiscriminationMatrix, l: int) -> float:
    """Original discrimination power of ``l`` against the current selection."""
    M._check_var(l)
    if l in M.selected:
        raise SelectionError(f"variable {M.variable_names[l]} is already selected")
    return float(kernels.odp_scores(M.cells, M.max_yd, [l])[0])


def odp_all(M: DiscriminationMatrix, candidates: Sequence[int]) -> np.ndarray:
    for l in candidates:
        if l in M.selected:
            raise SelectionError(f"variable {M.variable_names[l]} is already selected")
    return kernels.odp_scores(M.cells, M.max_yd, list(candidates))


def odp_against(M: DiscriminationMatrix, l: int, Yp: Iterable[int]) -> float:
    """ODP of ``l`` against an arbitrary set, by rescanning the rows of ``Yp``.

    This ignores ``max_yd``; it is the direct form of the definition.
    """
    M._check_var(l)
    Yp = sorted(set(Yp))
    if l in Yp:
        raise SelectionError("l must not belong to Yp")
    row = M.cells[l]
    if not Yp:
        return float(row.sum())
    best = M.cells[Yp].max(axis=0)
    return float(np.maximum(row - best, 0.0).sum())


def update_max_yd(M: DiscriminationMatrix, l: int) -> None:
    """Add ``l`` to the selection and fold its row into ``max_yd``."""
    M._check_var(l)
    if l in M.selected:
        raise SelectionError(f"variable {M.variable_names[l]} is already selected")
    M.selected.append(l)
    np.maximum(M.max_yd, M.cells[l], out=M.max_yd)


def indispensables(M: DiscriminationMatrix) -> List[int]:
    """Variables that beat every other variable by more than TOL on some pair."""
    if M.selected:
        raise SelectionError("indispensables are computed on a fresh matrix")
    if M.n == 0:
        return []
    _, margins = kernels.leave_one_out(M.cells, list(range(M.n)))
    return [l for l in range(M.n) if margins[l] > TOL]


def redundant_in_selection(M: DiscriminationMatrix) -> np.ndarray:
    """ODP of every selected variable against the rest of the selection."""
    sums, _ = kernels.leave_one_out(M.cells, M.selected)
    return sums


def property1_check(M: DiscriminationMatrix, Yp: Iterable[int], l: int):
    """Both sides of ``DP(Yp + l) == DP(Yp) + ODP(l, Yp)``, each computed directly."""
    Yp = sorted(set(Yp))
    if l in Yp:
        raise SelectionError("l must not belong to Yp")
    lhs = dp_set(M, Yp + [l])
    rhs = dp_set(M, Yp) + odp_against(M, l, Yp)
    return lhs, rhs


def boolean_view(M: DiscriminationMatrix) -> DiscriminationMatrix:
    """Matrix keeping only total discrimination: a cell is 1 where the score is 1, else 0.

    Used when only the scores are available (e.g. a loaded grid); on
    positive-measure value sets this is what the boolean measure gives.
    """
    cells = (M.cells >= 1.0 - TOL).astype(np.float64)
    return DiscriminationMatrix(cells, M.variable_names, M.pair_labels)


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def dump_csv(M: DiscriminationMatrix, fh=None) -> Optional[str]:
    """Write the grid and the ``Max Yd`` row as CSV; return the text if ``fh`` is None."""
    out = fh if fh is not None else io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["variable"] + M.pair_labels)
    for name, row in zip(M.variable_names, M.cells):
        w.writerow([name] + [_fmt(x) for x in row])
    w.writerow(["Max Yd"] + [_fmt(x) for x in M.max_yd])
    if fh is None:
        return out.getvalue()
    return None


def load_csv(fh):
    """Parse a dump back into ``(matrix, max_yd_row)``; the matrix has an empty selection."""
    rows = [r for r in csv.reader(fh) if r]
    if len(rows) < 2 or rows[0][0] != "variable":
        raise ValueError("not a discrimination matrix dump")
    labels = rows[0][1:]
    body = rows[1:]
    max_row = None
    if body[-1][0] == "Max Yd":
        max_row = np.array([float(x) for x in body[-1][1:]])
        body = body[:-1]
    names = [r[0] for r in body]
    cells = [[float(x) for x in r[1:]] for r in body]
    return DiscriminationMatrix(cells, names, labels), max_row
