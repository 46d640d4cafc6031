"""Synthetic test graphs: Erdos-Renyi, planted cliques, and a few fixed shapes."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph, build_graph

_DENSE_PAIRS = 20_000_000


def _check(n, p):
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")


def er_edges(n: int, p: float, seed: int) -> np.ndarray:
    """Edge array of a G(n, p) sample; each pair present independently with prob ``p``."""
    _check(n, p)
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    if pairs == 0 or p == 0.0:
        return np.empty((0, 2), dtype=np.int64)
    if pairs <= _DENSE_PAIRS:
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(pairs) < p
        return np.stack([iu[keep], ju[keep]], axis=1).astype(np.int64)
    # sparse regime: draw the edge count, then a uniform set of that many pairs
    m = int(rng.binomial(pairs, p))
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        want = int((m - len(keys)) * 1.05) + 64
        u = rng.integers(0, n, size=want)
        v = rng.integers(0, n, size=want)
        ok = u != v
        lo, hi = np.minimum(u[ok], v[ok]), np.maximum(u[ok], v[ok])
        keys = np.unique(np.concatenate([keys, lo * n + hi]))
    keys = rng.permutation(keys)[:m]
    return np.stack([keys // n, keys % n], axis=1)


def gen_er(n: int, p: float, seed: int) -> Graph:
    return build_graph(er_edges(n, p, seed), vertices=range(n))


def gen_planted_clique(n: int, p: float, clique_size: int, seed: int) -> Graph:
    """G(n, p) noise with a clique on vertices ``0..clique_size-1``."""
    if not 0 <= clique_size <= n:
        raise ValueError("clique_size must lie in [0, n]")
    noise = er_edges(n, p, seed)
    clique = np.array(list(combinations(range(clique_size), 2)), dtype=np.int64).reshape(-1, 2)
    return build_graph(np.concatenate([noise, clique]), vertices=range(n))


def complete_graph(n: int) -> Graph:
    return build_graph(list(combinations(range(n), 2)), vertices=range(n))


def path_graph(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(n - 1)], vertices=range(n))


def star_graph(leaves: int) -> Graph:
    return build_graph([(0, i) for i in range(1, leaves + 1)], vertices=range(leaves + 1))


def k4_minus_edge() -> Graph:
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def from_spec(spec: str) -> Graph:
    """Build a graph from a short spec.

    ``kN`` complete graph, ``k4me`` K4 minus an edge, ``pathN``, ``starN``,
    ``er:n:p:seed``, ``planted:n:p:k:seed``.
    """
    s = spec.strip().lower()
    try:
        if s == "k4me":
            return k4_minus_edge()
        if s.startswith("er:"):
            _, n, p, seed = s.split(":")
            return gen_er(int(n), float(p), int(seed))
        if s.startswith("planted:"):
            _, n, p, k, seed = s.split(":")
            return gen_planted_clique(int(n), float(p), int(k), int(seed))
        if s.startswith("path"):
            return path_graph(int(s[4:].lstrip(":")))
        if s.startswith("star"):
            return star_graph(int(s[4:].lstrip(":")))
        if s.startswith("k"):
            return complete_graph(int(s[1:]))
    except ValueError as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown generator spec {spec!r}")
