"""Energy map -> gamma-quasi-clique: breakpoint prefix, shrink, greedy reinsertion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .density import ExactGamma, SubsetDensityTracker, density_from_counts
from .graph import Graph


@dataclass(frozen=True)
class ExtractionResult:
    vertices: tuple[int, ...]
    internal_edges: int
    density: Fraction
    breakpoint: int
    probes: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)


def spectral_breakpoint(energies: Sequence[float]) -> int:
    """1-based index ``b`` of the largest drop ``e[b] - e[b+1]``; first one wins ties."""
    if len(energies) == 0:
        raise ValueError("breakpoint of an empty sequence")
    b, best = 1, -1.0
    for i in range(len(energies) - 1):
        drop = energies[i] - energies[i + 1]
        if drop > best:
            b, best = i + 1, drop
    return b


def ranked_candidates(f, theta: float) -> list[int]:
    """Vertices with positive energy ``>= theta``, by decreasing energy then id."""
    cand = [v for v, e in f.items() if e > 0 and e >= theta]
    cand.sort(key=lambda v: (-f[v], v))
    return cand


def _result(t: SubsetDensityTracker, b: int) -> ExtractionResult:
    return ExtractionResult(tuple(sorted(t.members)), t.internal_edges,
                            density_from_counts(t.internal_edges, len(t)), b, t.probes)


def extract_quasi_clique(G: Graph, f, gamma, theta: float = 0.001) -> ExtractionResult:
    gamma = ExactGamma.parse(gamma)
    order = ranked_candidates(f, theta)
    if not order:
        return ExtractionResult((), 0, Fraction(1), 0)
    b = spectral_breakpoint([f[v] for v in order])

    S = SubsetDensityTracker(G, order[:b])
    while len(S) > 3 and not S.meets(gamma):
        S.remove(S.members[-1])
    if not S.meets(gamma):
        return ExtractionResult((), 0, Fraction(1), b, S.probes)

    for v in order[len(S):]:
        if S.would_meet(v, gamma):
            S.add(v)
    return _result(S, b)


def greedy_insertion(G: Graph, f, gamma, theta: float = 0.001) -> ExtractionResult:
    """Insert by decreasing energy until gamma breaks, then drop the offending vertex and stop."""
    gamma = ExactGamma.parse(gamma)
    S = SubsetDensityTracker(G)
    for v in ranked_candidates(f, theta):
        S.add(v)
        if not S.meets(gamma):
            S.remove(v)
            break
    return _result(S, 0)
