import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treerep import orbicurve
from treerep.errors import DegenerateInput, SearchBudgetExceeded
from treerep.orbicurve import GeomClass, OrbicurveData

EUCLIDEAN_COMPACT = {(), (2, 2, 2, 2), (3, 3, 3), (4, 4, 2), (6, 3, 2)}


def chi(g, b, idx):
    return 2 - 2 * g - b - sum(Fraction(n - 1, n) for n in idx)


def test_classical_triangle_groups():
    assert orbicurve.classify_orbicurve(OrbicurveData(0, 0, (2, 3, 5))) is GeomClass.SPHERICAL
    d = OrbicurveData(0, 0, (2, 3, 7))
    assert d.euler_characteristic == Fraction(-1, 42)
    assert orbicurve.is_hyperbolic(d)
    assert orbicurve.classify_orbicurve(OrbicurveData(0, 0, (2, 3, 6))) is GeomClass.ELLIPTIC
    assert orbicurve.classify_orbicurve(OrbicurveData(0, 0, (2, 2, 9))) is GeomClass.SPHERICAL
    assert orbicurve.classify_orbicurve(OrbicurveData(1, 0)) is GeomClass.ELLIPTIC
    assert orbicurve.classify_orbicurve(OrbicurveData(0, 3)) is GeomClass.HYPERBOLIC
    assert orbicurve.classify_orbicurve(OrbicurveData(0, 1, (2, 2))) is GeomClass.ELLIPTIC


@given(st.integers(0, 2), st.integers(0, 3), st.lists(st.integers(2, 12), max_size=5))
def test_classification_matches_characteristic(g, b, idx):
    d = OrbicurveData(g, b, tuple(idx))
    c = chi(g, b, idx)
    assert d.euler_characteristic == c
    kind = orbicurve.classify_orbicurve(d)
    assert (kind is GeomClass.HYPERBOLIC) == (c < 0)
    if c == 0 and b == 0:
        assert g == 1 and not idx or g == 0 and tuple(sorted(idx, reverse=True)) in EUCLIDEAN_COMPACT
    # classification only depends on the multiset of indices
    assert orbicurve.classify_orbicurve(OrbicurveData(g, b, tuple(reversed(idx)))) is kind


@pytest.mark.parametrize("g,b", [(g, b) for g in range(4) for b in range(6) if (g, b) != (0, 0)][:20])
def test_index_bound_branches_are_exact(g, b):
    br = orbicurve.index_bound_branches(g, b)
    assert br.positive_genus == 2 * g - 1
    assert br.some_index_at_least_3 == max(6, 42 * (3 * b + 2 * g - 2))
    assert br.two_indices_equal_2 == max(2, 6 * (4 * b + 2 * g - 2))
    assert orbicurve.hurwitz_index_bound(g, b) == max(br.positive_genus, br.some_index_at_least_3, br.two_indices_equal_2)


def test_degenerate_bounds():
    with pytest.raises(DegenerateInput):
        orbicurve.hurwitz_index_bound(0, 0)
    assert orbicurve.hurwitz_index_bound(0, 1) == 42
    assert orbicurve.orbifold_point_bound(0, 1) == 2
    assert orbicurve.orbifold_point_bound(2, 1) == 10


def brute_types(g, b, n_max, k_max):
    out = set()
    for gy in range(g + 1):
        for by in range(b + 1):
            for k in range(k_max + 1):
                for idx in itertools.product(range(2, n_max + 1), repeat=k):
                    if chi(gy, by, idx) < 0:
                        out.add((gy, by, tuple(sorted(idx, reverse=True))))
    return out


@pytest.mark.parametrize("g,b,n,k", [(0, 0, 7, 3), (0, 1, 6, 3), (1, 0, 5, 2), (0, 2, 8, 2), (1, 1, 4, 3)])
def test_enumeration_matches_brute_force(g, b, n, k):
    types = orbicurve.enumerate_candidate_types(g, b, n, k)
    assert {(d.genus, d.punctures, d.indices) for d in types} == brute_types(g, b, n, k)
    assert len(types) == orbicurve.count_candidate_types(g, b, n, k)
    assert types == sorted(types)


def test_large_bound_counts_agree():
    assert orbicurve.count_candidate_types(0, 1) == len(orbicurve.enumerate_candidate_types(0, 1))
    assert len(orbicurve.enumerate_candidate_types(0, 0, 7, 3)) == 44


def test_monotone_in_bounds():
    counts = [orbicurve.count_candidate_types(1, 1, n, 3) for n in range(2, 9)]
    assert counts == sorted(counts)
    assert orbicurve.count_candidate_types(1, 2, 6, 3) >= orbicurve.count_candidate_types(1, 1, 6, 3)


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        orbicurve.enumerate_candidate_types(2, 2, budget=1000)


def test_invalid_data():
    with pytest.raises(ValueError):
        OrbicurveData(0, 0, (1, 3))
    with pytest.raises(ValueError):
        OrbicurveData(-1, 0)
