"""Density/energy correlation experiment and the (steps, theta) sensitivity grid."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .density import count_internal_edges, density_from_counts
from .diffusion import DiffusionParams, energy_diffusion
from .driver import RunConfig, edqc, run_many
from .graph import Graph

STEPS_GRID = (1, 2, 3)
THETA_GRID = (0.0001, 0.0005, 0.001, 0.005, 0.01)


class UndefinedCorrelationError(ValueError):
    pass


def pearson(xs, ys) -> float:
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(xs) < 2:
        raise UndefinedCorrelationError("need at least two samples")
    mx = math.fsum(xs) / len(xs)
    my = math.fsum(ys) / len(ys)
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("a coordinate has zero variance")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass
class CorrelationReport:
    samples: list[tuple[float, float]]  # (density, retained energy)
    pearson_r: float
    k: int
    source: int
    reference: tuple[float, float] | None

    def write_csv(self, stream) -> None:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["density", "energy"])
        for d, e in self.samples:
            w.writerow([repr(d), repr(e)])

    def to_dict(self, labels=None) -> dict:
        src = int(labels[self.source]) if labels is not None else self.source
        return {"k": self.k, "source": src, "pearson_r": self.pearson_r,
                "reference": list(self.reference) if self.reference else None,
                "samples": [list(s) for s in self.samples]}


def sample_subset(n: int, k: int, seed: int, index: int) -> np.ndarray:
    """The ``index``-th uniform k-subset for ``seed``; independent of other indices."""
    rng = np.random.default_rng([seed & 0xFFFFFFFF, index, 0xC0])
    return rng.choice(n, size=k, replace=False)


def energy_density_correlation(G: Graph, count: int = 1000,
                               params: DiffusionParams | None = None, seed: int = 1,
                               gamma="1", k: int | None = None, source: int | None = None,
                               budget: float = 60.0) -> CorrelationReport:
    """Correlate density with retained energy over ``count`` random k-subsets.

    Unless both ``k`` and ``source`` are given, one search with ``seed`` fixes
    them: ``k`` is the size of the quasi-clique found and ``source`` the vertex
    whose diffusion produced it. The energy map is that source's diffusion.
    """
    params = params or DiffusionParams()
    reference_set = None
    if k is None or source is None:
        found = edqc(G, RunConfig(gamma, params, budget, seed))
        if found.source is None:
            raise ValueError("search found no quasi-clique to anchor the experiment")
        k = found.size if k is None else k
        source = found.source if source is None else source
        reference_set = found.vertices
    if not 2 <= k <= G.n:
        raise ValueError(f"subset size k={k} must lie in [2, n={G.n}]")
    if count < 2:
        raise ValueError("count must be >= 2")

    f = energy_diffusion(G, source, params, seed)
    samples = []
    for i in range(count):
        S = sample_subset(G.n, k, seed, i)
        samples.append((float(density_from_counts(count_internal_edges(G, S), k)),
                        f.retained(S)))
    r = pearson([s[0] for s in samples], [s[1] for s in samples])
    reference = None
    if reference_set:
        reference = (float(density_from_counts(count_internal_edges(G, reference_set),
                                               len(reference_set))),
                     f.retained(reference_set))
    return CorrelationReport(samples, r, k, int(source), reference)


@dataclass
class SweepTable:
    steps: tuple[int, ...]
    thetas: tuple[float, ...]
    means: list[list[float]]  # means[i][j] for steps[i], thetas[j]

    def write_csv(self, stream) -> None:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["steps"] + [repr(t) for t in self.thetas])
        for s, row in zip(self.steps, self.means):
            w.writerow([s] + [repr(x) for x in row])

    def cell(self, steps: int, theta: float) -> float:
        return self.means[self.steps.index(steps)][self.thetas.index(theta)]


def parameter_sweep(G: Graph, gamma, steps_grid=STEPS_GRID, theta_grid=THETA_GRID,
                    runs: int = 10, seed: int = 1, budget: float = 60.0,
                    workers: int = 1) -> SweepTable:
    steps_grid, theta_grid = tuple(steps_grid), tuple(theta_grid)
    if not steps_grid or not theta_grid:
        raise ValueError("empty parameter grid")
    means = []
    for T in steps_grid:
        row = []
        for theta in theta_grid:
            cfg = RunConfig(gamma, DiffusionParams(T, theta), budget, seed, workers)
            row.append(run_many(G, cfg, runs).mean)
        means.append(row)
    return SweepTable(steps_grid, theta_grid, means)
