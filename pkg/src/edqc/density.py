"""Exact edge density and incremental subset tracking."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import Graph

MAX_GAMMA_DIGITS = 6


@dataclass(frozen=True, order=True)
class ExactGamma:
    """Density threshold stored as ``numerator / 10**scale``."""

    numerator: int
    scale: int

    def __post_init__(self):
        if not 0 <= self.scale <= MAX_GAMMA_DIGITS:
            raise ValueError(f"gamma may have at most {MAX_GAMMA_DIGITS} fractional digits")
        if not 0 < self.numerator <= 10**self.scale:
            raise ValueError("gamma must lie in (0, 1]")

    @classmethod
    def parse(cls, value) -> "ExactGamma":
        """Accept a decimal string, int, Decimal, float (via its repr) or ExactGamma."""
        if isinstance(value, ExactGamma):
            return value
        if isinstance(value, bool):
            raise ValueError(f"invalid gamma {value!r}")
        if isinstance(value, float):
            value = repr(value)
        try:
            d = Decimal(str(value).strip())
        except InvalidOperation:
            raise ValueError(f"invalid gamma {value!r}") from None
        if not d.is_finite():
            raise ValueError(f"invalid gamma {value!r}")
        scale = max(0, -d.normalize().as_tuple().exponent)
        if scale > MAX_GAMMA_DIGITS:
            raise ValueError(f"gamma {value!r} has more than {MAX_GAMMA_DIGITS} fractional digits")
        return cls(int(d.scaleb(scale)), scale)

    @property
    def denominator(self) -> int:
        return 10**self.scale

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def admits(self, internal_edges: int, size: int) -> bool:
        """True iff ``size`` vertices spanning ``internal_edges`` edges reach this density."""
        if size <= 1:
            return True
        return 2 * internal_edges * self.denominator >= self.numerator * size * (size - 1)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        if self.scale == 0:
            return str(self.numerator)
        s = str(self.numerator).rjust(self.scale + 1, "0")
        return f"{s[:-self.scale]}.{s[-self.scale:]}"


def count_internal_edges(G: Graph, S: Iterable[int]) -> int:
    members = np.zeros(G.n, dtype=bool)
    idx = np.fromiter(S, dtype=np.int64)
    if len(idx) == 0:
        return 0
    members[idx] = True
    total = 0
    for v in np.flatnonzero(members):
        total += int(members[G.neighbors(v)].sum())
    return total // 2


def density_from_counts(internal_edges: int, size: int) -> Fraction:
    if size <= 1:
        return Fraction(1)
    return Fraction(2 * internal_edges, size * (size - 1))


def density(G: Graph, S: Iterable[int]) -> Fraction:
    """Edge density of ``G[S]`` as an exact fraction; 1 for ``|S| <= 1``."""
    S = set(int(v) for v in S)
    return density_from_counts(count_internal_edges(G, S), len(S))


class SubsetDensityTracker:
    """Vertex subset of ``G`` with its internal edge count kept up to date.

    ``add``/``remove`` cost ``min(d(v), |S|)`` membership probes. ``probes``
    accumulates that cost for instrumentation.
    """

    def __init__(self, G: Graph, vertices: Iterable[int] = ()):
        self.G = G
        self.members: list[int] = []
        self._in = bytearray(G.n)
        self.internal_edges = 0
        self.probes = 0
        for v in vertices:
            self.add(v)

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return bool(self._in[v])

    def links_to(self, v: int) -> int:
        """Number of current members adjacent to ``v`` (``v`` itself excluded)."""
        nb = self.G.neighbors(v)
        if len(nb) <= len(self.members):
            self.probes += len(nb)
            return sum(self._in[w] for w in nb.tolist())
        self.probes += len(self.members)
        nbl = nb.tolist()
        hits = 0
        for x in self.members:
            i = bisect_left(nbl, x)
            if i < len(nbl) and nbl[i] == x:
                hits += 1
        return hits

    def add(self, v: int) -> "SubsetDensityTracker":
        v = int(v)
        if self._in[v]:
            raise ValueError(f"vertex {v} already in subset")
        self.internal_edges += self.links_to(v)
        self._in[v] = 1
        self.members.append(v)
        return self

    def remove(self, v: int) -> "SubsetDensityTracker":
        v = int(v)
        if not self._in[v]:
            raise ValueError(f"vertex {v} not in subset")
        self._in[v] = 0
        if self.members[-1] == v:
            self.members.pop()
        else:
            self.members.remove(v)
        self.internal_edges -= self.links_to(v)
        return self

    def density(self) -> Fraction:
        return density_from_counts(self.internal_edges, len(self.members))

    def meets(self, gamma: ExactGamma) -> bool:
        return gamma.admits(self.internal_edges, len(self.members))

    def would_meet(self, v: int, gamma: ExactGamma) -> bool:
        """Feasibility of ``members + {v}`` without mutating the tracker."""
        return gamma.admits(self.internal_edges + self.links_to(v), len(self.members) + 1)

    def state(self) -> tuple[frozenset, int]:
        return frozenset(self.members), self.internal_edges
