"""Ablated variants of the search and the best/worst tally across settings."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .driver import QuasiCliqueResult, RunConfig, search
from .graph import Graph


class Variant(enum.Enum):
    FULL = "full"
    NO_SEED_ORDERING = "no-seed-ordering"
    NO_ACTIVATION_THRESHOLD = "no-activation-threshold"
    NO_SPECTRAL_BREAKPOINT = "no-spectral-breakpoint"


def random_source_order(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng([seed & 0xFFFFFFFF, 0x0DE5]).permutation(n).astype(np.int64)


def run_variant(G: Graph, cfg: RunConfig, variant: Variant | str) -> QuasiCliqueResult:
    variant = Variant(variant)
    if variant is Variant.FULL:
        return search(G, cfg)
    if variant is Variant.NO_SEED_ORDERING:
        return search(G, cfg, order=random_source_order(G.n, cfg.seed))
    if variant is Variant.NO_ACTIVATION_THRESHOLD:
        # theta = 0: every vertex holding any energy is active and a candidate
        return search(G, cfg, theta=0.0)
    return search(G, cfg, greedy=True)


@dataclass
class AblationReport:
    settings: list[str]
    variants: list[Variant]
    means: dict[Variant, list[Fraction]] = field(default_factory=dict)
    best: dict[Variant, int] = field(default_factory=dict)
    worst: dict[Variant, int] = field(default_factory=dict)

    def rows(self):
        """One row per variant: name, best count, worst count, per-setting means."""
        for v in self.variants:
            yield [v.value, self.best[v], self.worst[v]] + [float(x) for x in self.means[v]]

    def unique_worst(self, variant: Variant) -> int:
        count = 0
        for i in range(len(self.settings)):
            mine = self.means[variant][i]
            if all(mine < self.means[o][i] for o in self.variants if o is not variant):
                count += 1
        return count


def ablation_report(suite, cfg: RunConfig, runs: int = 10,
                    variants=tuple(Variant)) -> AblationReport:
    """Run every variant over ``suite`` = [(label, graph, gamma), ...].

    A variant is counted best when its mean size equals the setting's maximum,
    and worst when it equals the minimum while the variants do not all tie.
    """
    variants = [Variant(v) for v in variants]
    report = AblationReport([s[0] for s in suite], variants,
                            {v: [] for v in variants}, dict.fromkeys(variants, 0),
                            dict.fromkeys(variants, 0))
    for label, G, gamma in suite:
        base = RunConfig(gamma, cfg.params, cfg.budget, cfg.seed, cfg.workers)
        means = {}
        for v in variants:
            sizes = [run_variant(G, base.with_seed(base.seed + i), v).size for i in range(runs)]
            means[v] = Fraction(sum(sizes), runs)
            report.means[v].append(means[v])
        hi, lo = max(means.values()), min(means.values())
        for v in variants:
            if means[v] == hi:
                report.best[v] += 1
            if means[v] == lo and lo < hi:
                report.worst[v] += 1
    return report
