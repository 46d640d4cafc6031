"""Stochastic energy diffusion from a single source vertex."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph
from .rng import MASK64, CounterStream, uniform_weights

RETENTION = 0.5


@dataclass(frozen=True)
class DiffusionParams:
    """Number of rounds and activation threshold. Retention is fixed at 1/2."""

    steps: int = 3
    theta: float = 0.001

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError("steps must be a positive integer")
        if not 0.0 <= self.theta < 1.0:
            raise ValueError("theta must lie in [0, 1)")


class EnergyMap(dict):
    """Sparse vertex -> energy mapping; vertices not present hold zero."""

    def total(self) -> float:
        return math.fsum(self.values())

    def support(self) -> set[int]:
        return {v for v, e in self.items() if e > 0}

    def retained(self, S) -> float:
        return math.fsum(self.get(int(v), 0.0) for v in S)


def active_set(f: EnergyMap, theta: float) -> list[int]:
    """Vertices whose energy strictly exceeds ``theta``, ascending."""
    return sorted(v for v, e in f.items() if e > theta)


def diffusion_round(G: Graph, f: EnergyMap, active, stream: CounterStream) -> EnergyMap:
    """One round of the local update, applied in place for each ``u`` in ``active``.

    ``active`` is the snapshot taken at the start of the round; vertices are
    processed in ascending id order and read the live energies, so energy
    received earlier in the round is passed on by later vertices.
    """
    for u in sorted(active):
        nb = G.neighbors(u)
        if len(nb) == 0:
            continue
        weights = uniform_weights(stream, len(nb))
        half = f.get(u, 0.0) * RETENTION
        for w, om in zip(nb.tolist(), weights):
            f[w] = f.get(w, 0.0) + half * om
        f[u] = half
    return f


def _check_source(G: Graph, source: int) -> int:
    source = int(source)
    if not 0 <= source < G.n:
        raise IndexError(f"source {source} out of range for graph with {G.n} vertices")
    return source


def energy_diffusion_py(G: Graph, source: int, params: DiffusionParams, seed: int = 1,
                        round_totals: list | None = None) -> EnergyMap:
    """Pure-Python diffusion built from :func:`diffusion_round`. Slow; for checking."""
    source = _check_source(G, source)
    stream = CounterStream(seed, source)
    f = EnergyMap({source: 1.0})
    A = [source]
    for _ in range(params.steps):
        diffusion_round(G, f, A, stream)
        if round_totals is not None:
            round_totals.append(f.total())
        A = active_set(f, params.theta)
    return f


def energy_diffusion(G: Graph, source: int, params: DiffusionParams | None = None,
                     seed: int = 1, round_totals: list | None = None) -> EnergyMap:
    """Diffuse unit energy from ``source`` for ``params.steps`` rounds.

    The random weights come from a stream keyed by ``(seed, source)``; the
    result is bit-for-bit identical to :func:`energy_diffusion_py`.
    """
    params = params or DiffusionParams()
    source = _check_source(G, source)
    sc = _kernels.Scratch(G.n, G.max_degree)
    sums = np.zeros(params.steps if round_totals is not None else 0)
    nt = _kernels.diffuse(G.indptr, G.indices, source, params.steps, params.theta,
                          np.uint64(seed & MASK64), sc.f, sc.touched,
                          sc.active, sc.wbuf, sc.lo_buf, sc.hi_buf, sums)
    idx = sc.touched[:nt]
    if round_totals is not None:
        round_totals.extend(sums.tolist())
    return EnergyMap(zip(idx.tolist(), sc.f[idx].tolist()))


def round_totals_all_sources(G: Graph, params: DiffusionParams, seed: int = 1,
                             sources=None) -> np.ndarray:
    """Total energy after each round, for every source: shape ``(len(sources), steps)``."""
    sources = np.arange(G.n, dtype=np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
    sc = _kernels.Scratch(G.n, G.max_degree)
    out = np.zeros((len(sources), params.steps))
    _kernels.diffuse_many(G.indptr, G.indices, sources, params.steps, params.theta,
                          np.uint64(seed & MASK64), sc.f, sc.touched,
                          sc.active, sc.wbuf, sc.lo_buf, sc.hi_buf, out)
    return out


def diffuse_all(G: Graph, params: DiffusionParams, seed: int = 1, sources=None) -> int:
    """Run a diffusion from every source (default: all vertices); return summed support size."""
    sources = np.arange(G.n, dtype=np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
    sc = _kernels.Scratch(G.n, G.max_degree)
    return int(_kernels.diffuse_many(G.indptr, G.indices, sources, params.steps, params.theta,
                                     np.uint64(seed & MASK64), sc.f, sc.touched,
                                     sc.active, sc.wbuf, sc.lo_buf, sc.hi_buf, np.zeros((0, params.steps))))
