"""Exact feasibility check and brute-force maximum quasi-clique for tiny graphs."""

from __future__ import annotations

from itertools import combinations

from .density import ExactGamma
from .graph import Graph

MAX_BRUTEFORCE_N = 24


class SizeGuardError(ValueError):
    pass


def is_quasi_clique(G: Graph, S, gamma) -> bool:
    """Exact test of ``density(G[S]) >= gamma``; independent of the search code."""
    gamma = ExactGamma.parse(gamma)
    S = sorted(set(int(v) for v in S))
    k = len(S)
    if k <= 1:
        return True
    adj = [set(G.neighbors(v).tolist()) for v in S]
    e = sum(1 for i in range(k) for j in range(i + 1, k) if S[j] in adj[i])
    return 2 * e * gamma.denominator >= gamma.numerator * k * (k - 1)


def max_quasi_clique_bruteforce(G: Graph, gamma) -> tuple[int, ...]:
    """Largest feasible vertex set, lexicographically smallest among the largest.

    Every subset is tested on its own merits: quasi-cliques are not closed
    under taking subsets, so nothing is pruned.
    """
    gamma = ExactGamma.parse(gamma)
    n = G.n
    if n > MAX_BRUTEFORCE_N:
        raise SizeGuardError(f"brute force limited to n <= {MAX_BRUTEFORCE_N}, got n={n}")
    masks = [0] * n
    for u, v in G.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    for k in range(n, 0, -1):
        need = gamma.numerator * k * (k - 1)
        for S in combinations(range(n), k):
            bits = 0
            for v in S:
                bits |= 1 << v
            twice_e = sum((masks[v] & bits).bit_count() for v in S)
            if twice_e * gamma.denominator >= need:
                return S
    return ()
