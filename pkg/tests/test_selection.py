import numpy as np
import pytest

from conftest import REFERENCE_GRID, GRID_NAMES, brute_cells, brute_dp, brute_odp, random_kb, subsets_reaching_total
from minsetplus import discrimination as dm
from minsetplus.errors import SelectionError
from minsetplus.measures import Measure
from minsetplus.model import NUMERIC, Assertion, KnowledgeBase, ValueSet, VariableSpec
from minsetplus.selection import minset, minset_partial_naive, minset_plus, select_from_matrix

KBS = [random_kb(seed) for seed in range(200)]
MEASURES = [Measure("jaccard"), Measure("boolean"), Measure("de_carvalho"), Measure("ichino", 0.5)]


def test_reference_grid_run():
    res = select_from_matrix(dm.DiscriminationMatrix(REFERENCE_GRID, GRID_NAMES))
    assert res.selected_names == ["y_1", "y_3", "y_4"]
    assert res.dp_selected == pytest.approx(3.6, abs=1e-9)
    assert res.dp_total == pytest.approx(3.6, abs=1e-9)
    assert [(s.action, s.variable) for s in res.trace] == [
        ("indispensable", 0), ("indispensable", 2), ("select", 3)]
    assert [s.dp_after for s in res.trace] == pytest.approx([1.0, 2.5, 3.6])
    assert res.reduction_pct == pytest.approx(40.0)
    assert res.trace_lines()[-1] == "selected: y_1, y_3, y_4"


def test_reference_grid_boolean_view_is_degenerate():
    res = select_from_matrix(dm.boolean_view(dm.DiscriminationMatrix(REFERENCE_GRID)))
    assert res.degenerate and res.selected == [] and res.dp_selected == 0
    assert "no variable discriminates" in res.diagnostic


def test_hair_height(hair_height_kb):
    for fn in (minset, lambda kb: minset_plus(kb, Measure("boolean"))):
        res = fn(hair_height_kb)
        assert sorted(res.selected_names) == ["hair", "height"]
        assert res.dp_selected == res.dp_total == 3


def test_identical_rows_select_first():
    M = dm.DiscriminationMatrix([[0.3, 0.5, 0.0]] * 4)
    res = select_from_matrix(M)
    assert res.selected == [0]
    assert res.dp_selected == pytest.approx(res.dp_total)


def test_fully_disjoint_pair_needs_one_variable():
    # both variables separate the pair; the first wins the tie
    spec = VariableSpec("w", NUMERIC, (0, 100))
    age = VariableSpec("age", NUMERIC, (0, 100))
    kb = KnowledgeBase([age, spec], [
        Assertion("a2", [ValueSet.numeric([(15, 35)]), ValueSet.numeric([(80, 90)])]),
        Assertion("a3", [ValueSet.numeric([(40, 60)]), ValueSet.numeric([(50, 60)])]),
    ])
    res = minset(kb)
    assert len(res.selected) == 1


def test_single_variable_kb():
    spec = VariableSpec("x", NUMERIC, (0, 10))
    kb = KnowledgeBase([spec], [Assertion("a", [ValueSet.numeric([(0, 4)])]),
                                Assertion("b", [ValueSet.numeric([(2, 6)])])])
    for fn in (minset_plus, minset_partial_naive):
        assert fn(kb).selected == [0]


def test_theta_validation(hair_height_kb):
    with pytest.raises(ValueError):
        minset_plus(hair_height_kb, theta=0)
    with pytest.raises(ValueError):
        minset_plus(hair_height_kb, theta=1.5)


def test_no_pairs_is_an_error():
    spec = VariableSpec("x", NUMERIC, (0, 10))
    kb = KnowledgeBase([spec], [Assertion("a", [ValueSet.numeric([(0, 4)])])])
    with pytest.raises(SelectionError):
        minset_plus(kb)
    with pytest.raises(SelectionError):
        minset_partial_naive(kb)


def test_report_serialisable(hair_height_kb):
    import json

    d = minset_plus(hair_height_kb).to_dict()
    json.dumps(d)
    assert d["selected_names"] and d["elapsed_ms"] >= 0
    assert d["measure"] == {"name": "jaccard"}


@pytest.mark.parametrize("measure", MEASURES, ids=lambda m: m.name)
def test_matrix_equals_naive(measure):
    for kb in KBS:
        a = minset_plus(kb, measure)
        b = minset_partial_naive(kb, 1.0, measure)
        assert a.selected == b.selected
        assert abs(a.dp_selected - b.dp_selected) <= 1e-9
        assert a.degenerate == b.degenerate


def test_minset_is_boolean_minset_plus():
    for kb in KBS:
        a, b = minset(kb), minset_plus(kb, Measure("boolean"), 1.0)
        assert a.selected == b.selected
        assert a.dp_selected == b.dp_selected


@pytest.mark.parametrize("measure", MEASURES, ids=lambda m: m.name)
def test_coverage_and_non_redundancy(measure):
    for kb in KBS:
        res = minset_plus(kb, measure)
        cells = brute_cells(kb, measure)
        total = brute_dp(cells, range(kb.n))
        if total <= 1e-9:
            assert res.degenerate and res.selected == []
            continue
        assert abs(res.dp_selected - total) <= 1e-9
        assert abs(brute_dp(cells, res.selected) - total) <= 1e-9
        for s in res.selected:
            others = [q for q in res.selected if q != s]
            assert brute_odp(cells, s, others) > 1e-9
        if kb.n <= 6:
            assert set(res.selected) in subsets_reaching_total(cells)


def test_indispensables_always_kept():
    for kb in KBS[:100]:
        M = dm.build_matrix(kb)
        keep = dm.indispensables(M)
        res = select_from_matrix(M)
        assert set(keep) <= set(res.selected)


def test_theta_below_one_stops_early():
    for kb in KBS[:100]:
        full = minset_plus(kb)
        part = minset_plus(kb, theta=0.9)
        if full.degenerate:
            continue
        assert part.dp_selected >= 0.9 * part.dp_total - 1e-9


def test_termination_bound():
    rng = np.random.default_rng(0)
    for _ in range(100):
        cells = rng.random((8, 12)) * (rng.random((8, 12)) < 0.4)
        res = select_from_matrix(dm.DiscriminationMatrix(cells))
        assert sum(s.action == "select" for s in res.trace) <= 8
        assert abs(res.dp_selected - dm.dp_set(dm.DiscriminationMatrix(cells), res.selected)) <= 1e-9
