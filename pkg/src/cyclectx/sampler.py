"""Seeded Monte Carlo of context-by-context measurements.

Generator: numpy's PCG64 bit generator, one independent stream per context.
Context ``k`` (0-based, in cycle order) of a run seeded with ``seed`` uses
``splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` as its PCG64
seed. Outcomes are drawn by inverting the cumulative distribution of the
context JPD over the outcomes ``(+,+), (+,-), (-,+), (-,-)`` with
``Generator.random``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import CorrelationData
from .quantum import OUTCOMES, QuantumState, _check_cycle, context_jpd
from .scenario import COMPATIBILITY_TOL, CycleScenario, cycle_edges

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
ANOMALY_SIGMAS = 5.0
PAIR_OUTCOMES = tuple((a, b) for a in OUTCOMES for b in OUTCOMES)


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def context_seed(seed: int, context: int) -> int:
    return splitmix64((int(seed) + (context + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    shots: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def sample_context(state: QuantumState, observables, shots: int, seed: int,
                   tol=COMPATIBILITY_TOL) -> dict:
    """Counts of each outcome pair after ``shots`` independent measurements."""
    a, b = observables
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    jpd = context_jpd(state, [a, b], tol=tol)
    p = np.array([jpd[o] for o in PAIR_OUTCOMES])
    cdf = np.cumsum(p) / p.sum()
    cdf[-1] = 1.0
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(shots)
    hits = np.searchsorted(cdf, u, side="right")
    counts = np.bincount(hits, minlength=4)
    return {o: int(c) for o, c in zip(PAIR_OUTCOMES, counts)}


def _product_mean(counts: dict) -> float:
    shots = sum(counts.values())
    return sum(a * b * c for (a, b), c in counts.items()) / shots


def _marginal_mean(counts: dict, slot: int) -> float:
    shots = sum(counts.values())
    return sum(o[slot] * c for o, c in counts.items()) / shots


def standard_error(mean: float, shots: int) -> float:
    return math.sqrt(max(1.0 - mean * mean, 0.0) / shots)


@dataclass(frozen=True)
class EmpiricalData:
    """Per-context counts and the statistics derived from them."""

    shots: int
    counts: tuple[dict, ...]
    data: CorrelationData
    context_averages: tuple[tuple[float, float], ...]
    no_signaling_residual: float
    no_signaling_z: float

    @property
    def anomalous(self) -> bool:
        return self.no_signaling_z > ANOMALY_SIGMAS

    def value(self, signs):
        """Signed cycle sum and its standard error."""
        corr = self.data.cycle_vector()
        errs = [self.data.correlation_errors[e] for e in cycle_edges(self.data.n)]
        est = float(sum(s * c for s, c in zip(signs, corr)))
        return est, float(math.sqrt(sum(e * e for e in errs)))

    def to_dict(self) -> dict:
        n = self.data.n
        return {
            "shots": self.shots,
            "contexts": [
                {"context": [k + 1, (k + 1) % n + 1],
                 "counts": {f"{'+' if a > 0 else '-'}{'+' if b > 0 else '-'}": c
                            for (a, b), c in self.counts[k].items()},
                 "correlation": self.data.correlation(k, (k + 1) % n),
                 "standard_error": self.data.correlation_errors[(k, (k + 1) % n)],
                 "averages": list(self.context_averages[k])}
                for k in range(n)
            ],
            "averages": list(self.data.averages),
            "average_errors": list(self.data.average_errors),
            "no_signaling_residual": self.no_signaling_residual,
            "no_signaling_z": self.no_signaling_z,
            "anomalous": self.anomalous,
        }


def estimate_scenario(s: CycleScenario, state: QuantumState, config: SampleConfig,
                      tol=COMPATIBILITY_TOL) -> EmpiricalData:
    """Sample every context and estimate averages and correlations.

    Each average is pooled over the two contexts holding the observable; the
    no-signaling residual is the largest gap between those two estimates.
    """
    _check_cycle(list(s.observables), tol)
    n, shots = s.n, config.shots
    counts, corr, corr_err, ctx_avg = [], {}, {}, []
    for k, (i, j) in enumerate(s.contexts):
        c = sample_context(state, (s[i], s[j]), shots, context_seed(config.seed, k), tol)
        counts.append(c)
        m = _product_mean(c)
        corr[(i, j)] = m
        corr_err[(i, j)] = standard_error(m, shots)
        ctx_avg.append((_marginal_mean(c, 0), _marginal_mean(c, 1)))

    averages, avg_err = [], []
    residual, zmax = 0.0, 0.0
    for i in range(n):
        first = ctx_avg[i][0]            # X_i in context (i, i+1)
        second = ctx_avg[(i - 1) % n][1]  # X_i in context (i-1, i)
        pooled = (first + second) / 2
        averages.append(pooled)
        avg_err.append(standard_error(pooled, 2 * shots))
        gap = abs(first - second)
        residual = max(residual, gap)
        se = math.sqrt(standard_error(first, shots) ** 2 + standard_error(second, shots) ** 2)
        if gap > 0:
            zmax = max(zmax, gap / se if se > 0 else math.inf)

    data = CorrelationData(n, averages, corr, average_errors=avg_err,
                           correlation_errors=corr_err)
    return EmpiricalData(shots, tuple(counts), data, tuple(ctx_avg), residual, zmax)
