from collections import deque

import numpy as np
import pytest
from hypothesis import given, strategies as st

from edqc.diffusion import (DiffusionParams, EnergyMap, active_set, diffuse_all,
                            diffusion_round, energy_diffusion, energy_diffusion_py,
                            round_totals_all_sources)
from edqc.generators import complete_graph, gen_er, path_graph
from edqc.graph import build_graph
from edqc.rng import CounterStream

from .strategies import small_graphs


def bfs_dist(G, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in G.neighbors(u).tolist():
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def test_params_validation():
    with pytest.raises(ValueError):
        DiffusionParams(0)
    with pytest.raises(ValueError):
        DiffusionParams(3, 1.0)
    with pytest.raises(ValueError):
        DiffusionParams(3, -0.1)


def test_single_edge():
    G = build_graph([(0, 1)])
    f = energy_diffusion(G, 0, DiffusionParams(1))
    assert f == {0: 0.5, 1: 0.5}


def test_isolated_source_keeps_everything():
    G = build_graph([(1, 2)], vertices=[0])
    for T in (1, 4):
        assert energy_diffusion(G, 0, DiffusionParams(T)) == {0: 1.0}


def test_triangle_one_round():
    f = energy_diffusion(complete_graph(3), 0, DiffusionParams(1, 0.001))
    assert f[0] == 0.5
    assert f[1] > 0 and f[2] > 0
    assert f[1] + f[2] == pytest.approx(0.5, abs=1e-15)


def test_round_with_empty_active_set():
    f = EnergyMap({0: 0.3, 1: 0.7})
    diffusion_round(path_graph(2), f, [], CounterStream(1, 0))
    assert f == {0: 0.3, 1: 0.7}


def test_shared_neighbour_gets_both_contributions():
    # path 0-1-2-3: both 1 and 3 push into 2 within the same round
    G = path_graph(4)
    f = EnergyMap({1: 0.5, 3: 0.5})
    diffusion_round(G, f, [1, 3], CounterStream(1, 0))
    assert f[3] == 0.25 and f[1] == 0.25
    # 2 is not active: it keeps what 1 did not send to 0, plus all of 3's half
    assert f[2] == pytest.approx(0.5 - f[0], abs=1e-15)
    assert f.total() == pytest.approx(1.0, abs=1e-15)


def test_sequential_update_reads_live_energy():
    # 0 goes first and hands 0.25 to 1, which then passes on half of 0.75
    G = path_graph(2)
    f = EnergyMap({0: 0.5, 1: 0.5})
    diffusion_round(G, f, [1, 0], CounterStream(1, 0))
    assert f == {0: 0.625, 1: 0.375}


def test_active_set_examples():
    assert active_set({0: 0.5, 1: 0.0005}, 0.001) == [0]
    assert active_set({0: 0.5, 1: 0.0005, 2: 0.0}, 0.0) == [0, 1]
    assert active_set({0: 0.001, 1: 0.2}, 0.001) == [1]


def test_high_threshold_halts_after_first_round():
    G = complete_graph(5)
    f = energy_diffusion(G, 0, DiffusionParams(1, 0.9))
    assert energy_diffusion(G, 0, DiffusionParams(6, 0.9)) == f


def test_bad_source():
    with pytest.raises(IndexError):
        energy_diffusion(complete_graph(3), 3)


@given(small_graphs(), st.data())
def test_compiled_matches_reference_bitwise(G, data):
    s = data.draw(st.integers(0, G.n - 1))
    T = data.draw(st.integers(1, 5))
    theta = data.draw(st.sampled_from([0.0, 0.0001, 0.001, 0.01, 0.1]))
    seed = data.draw(st.integers(0, 2**64 - 1))
    a_tot, b_tot = [], []
    a = energy_diffusion(G, s, DiffusionParams(T, theta), seed, a_tot)
    b = energy_diffusion_py(G, s, DiffusionParams(T, theta), seed, b_tot)
    assert a == b  # float equality: same operations in the same order
    assert np.allclose(a_tot, b_tot, rtol=0, atol=1e-15)


def test_compiled_matches_reference_on_larger_graph():
    G = gen_er(300, 0.03, 4)
    p = DiffusionParams(4, 0.0005)
    for s in (0, 17, 299):
        assert energy_diffusion(G, s, p, 9) == energy_diffusion_py(G, s, p, 9)


@given(small_graphs(), st.data())
def test_invariants(G, data):
    s = data.draw(st.integers(0, G.n - 1))
    T = data.draw(st.integers(1, 4))
    f = energy_diffusion(G, s, DiffusionParams(T, 0.0), data.draw(st.integers(0, 1000)))
    assert all(e >= 0 for e in f.values())
    assert abs(f.total() - 1.0) <= 1e-9
    dist = bfs_dist(G, s)
    assert all(v in dist and dist[v] <= T for v in f.support())


def test_determinism_and_seed_dependence():
    G = gen_er(200, 0.05, 1)
    p = DiffusionParams(3)
    assert energy_diffusion(G, 5, p, 3) == energy_diffusion(G, 5, p, 3)
    assert energy_diffusion(G, 5, p, 3) != energy_diffusion(G, 5, p, 4)


def test_round_totals_all_sources():
    G = gen_er(80, 0.1, 2)
    p = DiffusionParams(5, 0.001)
    out = round_totals_all_sources(G, p, 7)
    assert out.shape == (80, 5)
    assert np.abs(out - 1).max() <= 1e-12
    rec = []
    energy_diffusion(G, 11, p, 7, rec)
    assert out[11].tolist() == rec


def test_diffuse_all_support():
    G = gen_er(60, 0.1, 3)
    p = DiffusionParams(2)
    want = sum(len(energy_diffusion(G, s, p, 1)) for s in range(G.n))
    assert diffuse_all(G, p, 1) == want
