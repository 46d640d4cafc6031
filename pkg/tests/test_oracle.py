from itertools import combinations

import pytest
from hypothesis import given

from edqc.generators import complete_graph, k4_minus_edge, star_graph
from edqc.graph import build_graph
from edqc.oracle import SizeGuardError, is_quasi_clique, max_quasi_clique_bruteforce

from .strategies import gammas, small_graphs


def test_is_quasi_clique_examples():
    G = k4_minus_edge()
    assert is_quasi_clique(G, range(4), "0.8")
    assert not is_quasi_clique(G, range(4), "1")
    assert is_quasi_clique(G, [2], "1") and is_quasi_clique(G, [], "1")


@pytest.mark.parametrize("G,gamma,size", [(complete_graph(5), "1", 5),
                                          (k4_minus_edge(), "0.8", 4),
                                          (k4_minus_edge(), "1", 3)])
def test_bruteforce_examples(G, gamma, size):
    assert len(max_quasi_clique_bruteforce(G, gamma)) == size


def test_non_hereditary_instance():
    # the whole star is a 0.5-quasi-clique but two leaves alone are not
    G = star_graph(3)
    assert is_quasi_clique(G, range(4), "0.5")
    assert not is_quasi_clique(G, [1, 2], "0.5")
    assert max_quasi_clique_bruteforce(G, "0.5") == (0, 1, 2, 3)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        max_quasi_clique_bruteforce(complete_graph(25), "1")


def test_empty_graph():
    assert max_quasi_clique_bruteforce(build_graph([]), "1") == ()


@given(small_graphs(max_n=8), gammas)
def test_bruteforce_against_plain_enumeration(G, gamma):
    best = max_quasi_clique_bruteforce(G, gamma)
    assert is_quasi_clique(G, best, gamma)
    # nothing bigger is feasible
    for S in combinations(range(G.n), len(best) + 1):
        assert not is_quasi_clique(G, S, gamma)
