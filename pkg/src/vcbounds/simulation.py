"""Monte Carlo estimation of deviation probabilities with verifiable seeding.

Trial t of a run draws its own sub-stream seed from (base_seed, t) through the
counter-based mixer, so estimates are pure functions of the configuration and
identical for any worker partitioning.  Proportions carry Wilson score
intervals, which stay meaningful when the observed count is 0 or the tail
under study is tiny.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from .deviation_bounds import BoundBreakdown
from .hypothesis_classes import (
    Distribution,
    HypothesisClass,
    ensure_sup_supported,
    sample,
    sup_deviation_exact,
)
from .normal_approx import std_normal_cdf


@dataclass(frozen=True)
class MCConfig:
    trials: int
    base_seed: int = 0
    worker_count: int = 1
    confidence_level: float = 0.999

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials!r}")
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count!r}")
        if not (0.0 < self.confidence_level < 1.0):
            raise ValueError(f"confidence level must lie in (0, 1), got {self.confidence_level!r}")


@dataclass(frozen=True)
class MCEstimate:
    """Estimated exceedance probability with a Wilson confidence interval."""

    successes: int
    trials: int
    p_hat: float
    ci_low: float
    ci_high: float
    base_seed: int
    confidence_level: float


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF by bisection on the forward CDF."""
    if not (0.0 < q < 1.0):
        raise ValueError(f"quantile level must lie in (0, 1), got {q!r}")
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if std_normal_cdf(mid) < q:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def wilson_interval(successes: int, trials: int, confidence_level: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    The endpoints are exact (0 or 1) at the degenerate counts, where the
    closed form only reaches them up to rounding.
    """
    z = normal_quantile(0.5 + 0.5 * confidence_level)
    n = trials
    p = successes / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2.0 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom
    low = 0.0 if successes == 0 else max(center - half, 0.0)
    high = 1.0 if successes == trials else min(center + half, 1.0)
    return low, high


def _estimate(successes: int, cfg: MCConfig) -> MCEstimate:
    low, high = wilson_interval(successes, cfg.trials, cfg.confidence_level)
    return MCEstimate(
        successes=successes,
        trials=cfg.trials,
        p_hat=successes / cfg.trials,
        ci_low=low,
        ci_high=high,
        base_seed=cfg.base_seed,
        confidence_level=cfg.confidence_level,
    )


def _split_ranges(trials: int, workers: int) -> list[tuple[int, int]]:
    step = (trials + workers - 1) // workers
    return [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]


def _bn_chunk(args) -> int:
    cls, dist, n, epsilon, base_seed, lo, hi = args
    count = 0
    for t in range(lo, hi):
        s = sample(dist, n, rng.counter_seed(base_seed, t))
        if sup_deviation_exact(s, cls) > epsilon:
            count += 1
    return count


def estimate_Bn(
    cls: HypothesisClass,
    dist: Distribution,
    n: int,
    epsilon: float,
    cfg: MCConfig,
) -> MCEstimate:
    """Monte Carlo estimate of P(sup-deviation over the class > epsilon).

    Each trial draws a fresh n-point sample from its own counter-derived
    sub-stream and computes the exact supremum; exceedance is strict.  The
    result is independent of worker_count.
    """
    ensure_sup_supported(cls, dist, n)
    chunks = [(cls, dist, n, epsilon, cfg.base_seed, lo, hi) for lo, hi in _split_ranges(cfg.trials, cfg.worker_count)]
    if cfg.worker_count == 1:
        counts = [_bn_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            counts = list(pool.map(_bn_chunk, chunks))
    return _estimate(sum(counts), cfg)


def _single_tail_chunk(args) -> int:
    p, n, epsilon, base_seed, lo, hi = args
    seeds = rng.counter_seeds(base_seed, lo, hi)
    hits = np.zeros(seeds.size, dtype=np.int64)
    # k-th Bernoulli of each trial comes from counter k of that trial's stream
    for k in range(n):
        hits += rng.uniforms_at(seeds, k) < p
    dev = np.abs(hits / n - p)
    return int(np.count_nonzero(dev > epsilon))


def estimate_single_tail(p: float, n: int, epsilon: float, cfg: MCConfig) -> MCEstimate:
    """Monte Carlo estimate of P(|mean of n Bernoulli(p) draws - p| > epsilon)."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    chunks = [(p, n, epsilon, cfg.base_seed, lo, hi) for lo, hi in _split_ranges(cfg.trials, cfg.worker_count)]
    if cfg.worker_count == 1:
        counts = [_single_tail_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            counts = list(pool.map(_single_tail_chunk, chunks))
    return _estimate(sum(counts), cfg)


@dataclass(frozen=True)
class BoundCheck:
    """Comparison of one bound against the estimate's lower confidence limit."""

    bound: BoundBreakdown
    status: str
    margin: float


@dataclass(frozen=True)
class VerificationReport:
    estimate: MCEstimate
    checks: tuple[BoundCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)


def verify_bound(est: MCEstimate, bounds: list[BoundBreakdown]) -> VerificationReport:
    """PASS when the estimate is statistically consistent with each bound.

    A bound is flagged VIOLATION only when even the interval's lower limit
    exceeds its clamped value; the margin reports by how much (negative
    margins show headroom).
    """
    checks = []
    for b in bounds:
        margin = est.ci_low - b.clamped_total
        checks.append(BoundCheck(bound=b, status="VIOLATION" if margin > 0 else "PASS", margin=margin))
    return VerificationReport(estimate=est, checks=tuple(checks))
