from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from edqc.density import ExactGamma, SubsetDensityTracker, count_internal_edges, density
from edqc.generators import complete_graph, k4_minus_edge, path_graph

from .strategies import small_graphs


@pytest.mark.parametrize("text,num,scale", [("1", 1, 0), ("0.9", 9, 1), ("0.999", 999, 3),
                                            ("0.500000", 5, 1), (0.85, 85, 2), (1, 1, 0)])
def test_gamma_parse(text, num, scale):
    g = ExactGamma.parse(text)
    assert (g.numerator, g.scale) == (num, scale)


@pytest.mark.parametrize("bad", ["0", "-0.5", "1.01", "0.1234567", "abc", "nan", True])
def test_gamma_rejects(bad):
    with pytest.raises(ValueError):
        ExactGamma.parse(bad)


def test_gamma_str_and_fraction():
    g = ExactGamma.parse("0.05")
    assert str(g) == "0.05"
    assert g.as_fraction() == Fraction(1, 20)
    assert str(ExactGamma.parse("1")) == "1"


def test_gamma_boundary_is_exact():
    # 5 of 6 edges is exactly 5/6; a float threshold would be off by rounding
    g = ExactGamma.parse("0.833333")
    assert g.admits(5, 4)
    assert not ExactGamma.parse("0.833334").admits(5, 4)


def test_small_sets_are_feasible():
    g = ExactGamma.parse("1")
    assert g.admits(0, 0) and g.admits(0, 1)
    assert not g.admits(0, 2)


def test_known_densities():
    assert density(k4_minus_edge(), range(4)) == Fraction(5, 6)
    assert density(path_graph(3), range(3)) == Fraction(2, 3)
    assert density(complete_graph(6), range(6)) == 1
    assert density(path_graph(3), [1]) == 1


def test_tracker_example():
    G = k4_minus_edge()
    t = SubsetDensityTracker(G)
    for v in range(4):
        t.add(v)
    assert t.internal_edges == 5 and t.density() == Fraction(5, 6)
    assert t.meets(ExactGamma.parse("0.8")) and not t.meets(ExactGamma.parse("0.9"))
    t.remove(3)
    assert t.state() == (frozenset({0, 1, 2}), count_internal_edges(G, [0, 1, 2]))


def test_tracker_contract():
    t = SubsetDensityTracker(path_graph(3), [0])
    with pytest.raises(ValueError):
        t.add(0)
    with pytest.raises(ValueError):
        t.remove(2)


@given(small_graphs(), st.data())
def test_tracker_matches_recount(G, data):
    t = SubsetDensityTracker(G)
    present = set()
    for _ in range(data.draw(st.integers(0, 30))):
        v = data.draw(st.integers(0, G.n - 1))
        if v in present:
            t.remove(v)
            present.discard(v)
        else:
            t.add(v)
            present.add(v)
        # independent recount from the edge list
        e = sum(1 for a, b in combinations(sorted(present), 2) if G.has_edge(a, b))
        assert t.state() == (frozenset(present), e)


@given(small_graphs(), st.data())
def test_would_meet_agrees_with_add(G, data):
    g = ExactGamma.parse(data.draw(st.sampled_from(["0.5", "0.8", "1"])))
    base = data.draw(st.sets(st.integers(0, G.n - 1)))
    t = SubsetDensityTracker(G, base)
    for v in range(G.n):
        if v in t:
            continue
        guess = t.would_meet(v, g)
        t.add(v)
        assert guess == t.meets(g)
        t.remove(v)
