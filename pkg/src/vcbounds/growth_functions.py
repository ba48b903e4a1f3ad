"""Growth functions, shattering checks, and combinatorial ceiling evaluators.

The growth value of a class at r is the largest number of distinct subsets it
induces on any r-point configuration.  For the built-in families this module
provides both exact closed forms and enumeration-based maximization over
structured plus random configurations, which double as cross-checks of each
other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import SizeLimitError, UnsupportedClassError
from .hypothesis_classes import (
    HALFSPACES,
    INTERVALS,
    RAYS,
    HypothesisClass,
)

TRACE_POINT_LIMIT = 22
SHATTER_SEARCH_LIMIT = 8
DEFAULT_RANDOM_CONFIGS = 1000


@dataclass(frozen=True)
class TraceReport:
    """Distinct-subset count induced on a specific point configuration."""

    point_count: int
    distinct_traces: int
    shattered: bool


def trace_count(points, cls) -> TraceReport:
    """Exact number of distinct subsets of ``points`` induced by the class.

    ``cls`` is a built-in :class:`HypothesisClass` or any object exposing
    ``dimension`` and ``trace_masks(points) -> set[int]``.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    r = pts.shape[0]
    if r > TRACE_POINT_LIMIT:
        raise SizeLimitError(f"r={r} exceeds the trace enumeration guard {TRACE_POINT_LIMIT}")
    if r == 0:
        return TraceReport(point_count=0, distinct_traces=1, shattered=True)
    masks = cls.trace_masks(pts)
    distinct = len(masks)
    return TraceReport(point_count=r, distinct_traces=distinct, shattered=distinct == (1 << r))


def growth_exact(cls: HypothesisClass, r: int) -> int:
    """Closed-form growth value of a built-in class at r points.

    rays: 2r; intervals: r(r+1)/2 + 1; half-spaces in dimension d:
    2 * sum_{i<=d} C(r-1, i), the distinct-dichotomy count for points in
    general position.
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r!r}")
    if r == 0:
        return 1
    if cls.kind == RAYS:
        return 2 * r
    if cls.kind == INTERVALS:
        return r * (r + 1) // 2 + 1
    if cls.kind == HALFSPACES:
        return 2 * sum(math.comb(r - 1, i) for i in range(cls.dimension + 1))
    raise UnsupportedClassError(f"no closed-form growth value for {cls.kind!r}")


@dataclass(frozen=True)
class SauerBound:
    """Both classic ceilings on a growth value for VC dimension d at n points."""

    sum_form: int
    pow_form: float
    log_pow_form: float


def sauer_bound(n: int, d: int) -> SauerBound:
    """sum_{i<=d} C(n, i) and (e*n/d)**d, the latter kept in log space too."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n!r}, d={d!r}")
    sum_form = sum(math.comb(n, i) for i in range(d + 1))
    log_pow = d * (1.0 + math.log(n) - math.log(d))
    pow_form = math.exp(log_pow) if log_pow <= 709.0 else math.inf
    return SauerBound(sum_form=sum_form, pow_form=pow_form, log_pow_form=log_pow)


# ---------------------------------------------------------------------------
# Configuration search
# ---------------------------------------------------------------------------


def _structured_configs_1d(r: int) -> list[np.ndarray]:
    if r == 1:
        return [np.array([[0.5]])]
    grid = np.linspace(0.1, 0.9, r).reshape(r, 1)
    tight = (0.5 + 0.001 * np.arange(r)).reshape(r, 1)
    return [grid, tight]


def _structured_configs_2d(r: int) -> list[np.ndarray]:
    angles = 2.0 * math.pi * np.arange(r) / max(r, 1) + 0.1
    circle = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    side = math.ceil(math.sqrt(r))
    gx, gy = np.meshgrid(np.arange(side, dtype=np.float64), np.arange(side, dtype=np.float64))
    grid = np.stack([gx.ravel(), gy.ravel()], axis=1)[:r]
    configs = [circle, grid]
    if r >= 3:
        hull = circle.copy()
        hull[0] = 0.05 * hull[0]  # one point pulled inside the convex position
        configs.append(hull)
    return configs


def _random_config(dimension: int, r: int, seed: int) -> np.ndarray:
    if dimension == 1:
        return rng.uniform_stream(seed, r).reshape(r, 1)
    return rng.gaussian_stream(seed, r * dimension).reshape(r, dimension)


def in_general_position(points: np.ndarray) -> bool:
    """No repeated points; in 2-D additionally no collinear triple (exact predicate)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    r = pts.shape[0]
    for i in range(r):
        for j in range(i + 1, r):
            if np.all(pts[i] == pts[j]):
                return False
    if pts.shape[1] == 2:
        for i in range(r):
            for j in range(i + 1, r):
                for k in range(j + 1, r):
                    ux, uy = pts[j, 0] - pts[i, 0], pts[j, 1] - pts[i, 1]
                    vx, vy = pts[k, 0] - pts[i, 0], pts[k, 1] - pts[i, 1]
                    if ux * vy - uy * vx == 0.0:
                        return False
    return True


def search_configurations(
    cls,
    r: int,
    seed: int = 0,
    n_random: int = DEFAULT_RANDOM_CONFIGS,
    general_position_only: bool = False,
):
    """Yield (points, trace_report) over structured plus seeded random configurations.

    Degenerate configurations are skipped when ``general_position_only`` is
    set (required when maximizing toward the half-space closed form, which
    counts general-position dichotomies).
    """
    dimension = cls.dimension
    if dimension == 1:
        structured = _structured_configs_1d(r)
    elif dimension == 2:
        structured = _structured_configs_2d(r)
    else:
        raise UnsupportedClassError("configuration search supports dimensions 1 and 2")
    configs = structured + [
        _random_config(dimension, r, rng.counter_seed(seed, 1000 * r + t)) for t in range(n_random)
    ]
    for pts in configs:
        if general_position_only and not in_general_position(pts):
            continue
        yield pts, trace_count(pts, cls)


def max_trace_count(
    cls,
    r: int,
    seed: int = 0,
    n_random: int = DEFAULT_RANDOM_CONFIGS,
    general_position_only: bool = False,
) -> TraceReport:
    """Best trace count found by the configuration search at r points."""
    if r == 0:
        return TraceReport(0, 1, True)
    best: TraceReport | None = None
    for _, report in search_configurations(cls, r, seed, n_random, general_position_only):
        if best is None or report.distinct_traces > best.distinct_traces:
            best = report
    if best is None:
        raise ValueError("no admissible configuration found")
    return best


@dataclass(frozen=True)
class VCEstimate:
    """Certified lower bound on VC dimension with a shattered witness configuration."""

    dimension: int
    witness: np.ndarray | None


def vc_dimension_estimate(
    cls,
    r_max: int = SHATTER_SEARCH_LIMIT,
    seed: int = 0,
    n_random: int = DEFAULT_RANDOM_CONFIGS,
) -> VCEstimate:
    """Largest r <= r_max with a shattered configuration found by search.

    The result is a certified lower bound on the VC dimension (the witness is
    returned); for the built-in classes it is exact once r_max reaches the
    known dimension.
    """
    if r_max > SHATTER_SEARCH_LIMIT:
        raise SizeLimitError(f"r_max={r_max} exceeds the shattering search guard {SHATTER_SEARCH_LIMIT}")
    best_r = 0
    witness: np.ndarray | None = None
    for r in range(1, r_max + 1):
        for pts, report in search_configurations(cls, r, seed, n_random):
            if report.shattered:
                best_r = r
                witness = np.array(pts)
                break
    return VCEstimate(dimension=best_r, witness=witness)
