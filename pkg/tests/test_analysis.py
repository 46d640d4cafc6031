import io

import pytest

from edqc.analysis import (UndefinedCorrelationError, energy_density_correlation,
                           parameter_sweep, pearson, sample_subset)
from edqc.diffusion import DiffusionParams
from edqc.driver import RunConfig, run_many
from edqc.generators import complete_graph, gen_planted_clique
from edqc.graph import build_graph


@pytest.mark.parametrize("xs,ys,r", [([1, 2, 3], [2, 4, 6], 1.0), ([1, 2, 3], [6, 4, 2], -1.0),
                                     ([1, 2, 3, 4], [1, 3, 2, 4], 0.8)])
def test_pearson(xs, ys, r):
    assert pearson(xs, ys) == pytest.approx(r, abs=1e-12)


def test_pearson_degenerate():
    with pytest.raises(UndefinedCorrelationError):
        pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(UndefinedCorrelationError):
        pearson([1], [1])
    with pytest.raises(ValueError):
        pearson([1, 2], [1])


def test_sample_subset():
    a = sample_subset(30, 5, 1, 0)
    assert len(set(a.tolist())) == 5 and a.max() < 30
    assert (a == sample_subset(30, 5, 1, 0)).all()


def two_k5():
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    return build_graph(edges + [(u + 5, v + 5) for u, v in edges])


def test_clique_with_isolated_vertices_positive():
    # energy and density both grow with the number of clique members drawn
    G = build_graph([(u, v) for u in range(5) for v in range(u + 1, 5)], vertices=range(10))
    rep = energy_density_correlation(G, 300, DiffusionParams(3), 1, k=5, source=0)
    assert rep.pearson_r > 0.5
    assert rep.k == 5 and rep.source == 0 and len(rep.samples) == 300


def test_two_disjoint_cliques_near_zero():
    # a subset inside the other clique is just as dense but holds no energy;
    # density is symmetric in the split while energy is monotone, so r ~ 0
    rep = energy_density_correlation(two_k5(), 300, DiffusionParams(3), 1, k=5, source=0)
    assert abs(rep.pearson_r) < 0.25


def test_all_subsets_identical_is_undefined():
    with pytest.raises(UndefinedCorrelationError):
        energy_density_correlation(complete_graph(6), 2, k=6, source=0)


def test_defaults_come_from_search():
    G = gen_planted_clique(80, 0.05, 8, 1)
    rep = energy_density_correlation(G, 50)
    assert rep.k >= 8 and rep.reference[0] == 1.0
    buf = io.StringIO()
    rep.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "density,energy" and len(lines) == 51
    d = rep.to_dict(G.labels)
    assert d["pearson_r"] == rep.pearson_r


def test_bad_k():
    with pytest.raises(ValueError):
        energy_density_correlation(complete_graph(4), 10, k=1, source=0)


def test_sweep_single_cell_matches_run_many():
    G = gen_planted_clique(60, 0.1, 6, 2)
    t = parameter_sweep(G, "0.8", [2], [0.005], runs=3, seed=5)
    want = run_many(G, RunConfig("0.8", DiffusionParams(2, 0.005), seed=5), 3).mean
    assert t.cell(2, 0.005) == want


def test_sweep_complete_graph():
    t = parameter_sweep(complete_graph(5), "1", runs=1)
    assert t.steps == (1, 2, 3) and len(t.thetas) == 5
    assert all(x == 5 for row in t.means for x in row)
    buf = io.StringIO()
    t.write_csv(buf)
    assert buf.getvalue().splitlines()[0].startswith("steps,")


def test_sweep_empty_grid():
    with pytest.raises(ValueError):
        parameter_sweep(complete_graph(3), "1", [], [0.001])
