import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CAT_SPEC, NUM_SPEC, categorical_sets, numeric_sets
from minsetplus.errors import DatasetError
from minsetplus.measures import Measure, comp, de_carvalho, g_jaccard, ichino_yaguchi
from minsetplus.model import CATEGORICAL, NUMERIC, ValueSet, VariableSpec, intersect, mu, union_

C = ValueSet.categorical
N = ValueSet.numeric
HAIR = VariableSpec("hair", CATEGORICAL, ("brown", "black", "grey"))


def test_comp_examples():
    assert comp(C({"brown"}), C({"black"})) == 1
    assert comp(C({"tall"}), C({"tall", "medium"})) == 0
    assert comp(N([(15, 35)]), N([(20, 35)])) == 0


def test_comp_touching_endpoints_not_discriminated():
    assert comp(N([(0, 5)]), N([(5, 9)])) == 0


def test_jaccard_examples():
    assert g_jaccard(C({"brown"}), C({"brown", "black"})) == pytest.approx(0.5, abs=1e-12)
    assert g_jaccard(N([(25, 45)]), N([(20, 35)])) == pytest.approx(0.6, abs=1e-12)
    assert g_jaccard(N([(1, 4)]), N([(1, 4)])) == 0
    assert g_jaccard(N([(1, 4)]), N([(6, 9)])) == 1


def test_jaccard_point_sets_fall_back_to_counting():
    assert g_jaccard(ValueSet.point(3), ValueSet.point(3)) == 0
    assert g_jaccard(ValueSet.point(3), ValueSet.point(4)) == 1
    assert g_jaccard(N([(1, 1), (2, 2)]), N([(2, 2), (3, 3)])) == pytest.approx(2 / 3)


def test_jaccard_both_empty():
    e = ValueSet.empty(NUMERIC)
    assert g_jaccard(e, e) == 0


def test_de_carvalho_examples():
    assert de_carvalho(C({"brown"}), C({"brown", "black"}), HAIR) == pytest.approx(0.5)
    assert de_carvalho(C({"brown"}), C({"brown"}), HAIR) == 0
    assert de_carvalho(C({"brown"}), C({"black"}), HAIR) == 1


def test_ichino_examples():
    assert ichino_yaguchi(C({"brown"}), C({"black"}), gamma=0.0) == 2
    assert ichino_yaguchi(N([(0, 2)]), N([(1, 3)]), gamma=0.5) == pytest.approx(1)
    assert ichino_yaguchi(N([(0, 2)]), N([(0, 2)]), gamma=0.3) == 0


def test_ichino_gamma_range():
    with pytest.raises(ValueError):
        ichino_yaguchi(N([(0, 1)]), N([(0, 1)]), gamma=0.6)
    with pytest.raises(ValueError):
        Measure("ichino", gamma=-0.1)


def test_measure_names_and_normalisation():
    assert Measure("de-carvalho").name == "de_carvalho"
    with pytest.raises(ValueError, match="unknown measure"):
        Measure("cosine")
    spec = VariableSpec("x", NUMERIC, (0, 10))
    m = Measure("ichino", 0.0)
    assert m(N([(0, 1)]), N([(9, 10)]), spec) == pytest.approx(1.0)


def test_kind_mismatch():
    with pytest.raises(DatasetError):
        g_jaccard(C({"a"}), N([(0, 1)]))
    with pytest.raises(DatasetError):
        comp(C({"a"}), N([(0, 1)]))


MEASURES = [Measure("boolean"), Measure("jaccard"), Measure("de_carvalho"),
            Measure("ichino", 0.0), Measure("ichino", 0.25), Measure("ichino", 0.5)]


def _random_pairs(kind, count=1000, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if kind == CATEGORICAL:
            pick = lambda: C(rng.sample(CAT_SPEC.domain, rng.randint(1, 5)))
        else:
            def pick():
                pieces = []
                for _ in range(rng.randint(1, 3)):
                    a = rng.uniform(0, 18)
                    pieces.append((a, a + rng.choice((0.0, rng.uniform(0, 2)))))
                return N(pieces)
        out.append((pick(), pick()))
    return out


@pytest.mark.parametrize("kind,spec", [(CATEGORICAL, CAT_SPEC), (NUMERIC, NUM_SPEC)])
@pytest.mark.parametrize("m", MEASURES, ids=lambda m: f"{m.name}-{m.gamma}")
def test_symmetric_and_reflexive(kind, spec, m):
    for u, v in _random_pairs(kind):
        assert m(u, v, spec) == pytest.approx(m(v, u, spec), abs=1e-12)
        assert m(u, u, spec) == pytest.approx(0.0, abs=1e-12)
        assert 0.0 <= m(u, v, spec) <= 1.0


@given(numeric_sets, numeric_sets)
def test_jaccard_range_and_comp_implication_numeric(u, v):
    g = g_jaccard(u, v)
    assert 0.0 <= g <= 1.0
    if comp(u, v) == 1:
        assert g == 1.0


@given(categorical_sets, categorical_sets)
def test_jaccard_vs_equality_categorical(u, v):
    g = g_jaccard(u, v)
    if comp(u, v) == 1:
        assert g == 1.0
    if not u.is_empty and not v.is_empty:
        assert (g == 0.0) == (u == v)


@given(numeric_sets, numeric_sets)
def test_jaccard_zero_iff_equal_numeric(u, v):
    if mu(u) > 0 and mu(v) > 0:
        assert (g_jaccard(u, v) == 0.0) == (mu(union_(u, v)) - mu(intersect(u, v)) == 0)


@given(st.integers(0, 10), st.integers(0, 10))
def test_jaccard_monotone_in_intersection(shift_a, shift_b):
    # union fixed at [0, 30]; the intersection grows as the smaller shift
    # slides the second interval left
    lo, hi = sorted((shift_a, shift_b))

    def g_for(s):
        return g_jaccard(N([(0, 20)]), N([(10 - s, 30)]) if s else N([(10, 30)]))

    assert g_for(hi) <= g_for(lo) + 1e-12


def test_boolean_cell_is_threshold_of_jaccard_on_positive_sets():
    for u, v in _random_pairs(NUMERIC, 500, seed=3):
        if mu(u) > 0 and mu(v) > 0 and comp(u, v) == 0 and mu(intersect(u, v)) > 0:
            assert g_jaccard(u, v) < 1.0
        if comp(u, v) == 1:
            assert math.isclose(g_jaccard(u, v), 1.0)
