"""Concrete set families (rays, intervals, half-spaces) over built-in laws.

Provides membership predicates, closed-form true probabilities, reproducible
sampling, exact trace enumeration on finite point sets, and exact computation
of the supremum deviation sup_A |d_n(A) - P(A)| over a whole family.

The 1-D supremum algorithms work on CDF-transformed points (the probability
integral transform reduces every continuous 1-D law to uniform on [0, 1]);
the half-plane supremum maximizes over a finite canonical family of boundary
lines that provably contains the extremizers.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import rng
from .errors import SizeLimitError, UnsupportedClassError
from .normal_approx import std_normal_cdf

RAYS = "rays_1d"
INTERVALS = "intervals_1d"
HALFSPACES = "halfspaces_d"
CLASS_KINDS = (RAYS, INTERVALS, HALFSPACES)

UNIFORM01 = "uniform01"
STD_GAUSSIAN = "std_gaussian_d"
DISTRIBUTION_KINDS = (UNIFORM01, STD_GAUSSIAN)

INTERVAL_N_LIMIT = 10_000
HALFPLANE_N_LIMIT = 300

SAMPLE_SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class HypothesisClass:
    """Descriptor of a set family: rays or intervals on the line, half-spaces in R^d."""

    kind: str
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.kind not in CLASS_KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension!r}")
        if self.kind in (RAYS, INTERVALS) and self.dimension != 1:
            raise ValueError(f"{self.kind} requires dimension 1, got {self.dimension!r}")

    def trace_masks(self, points: np.ndarray) -> set[int]:
        """Distinct traces induced on ``points``, as bitmask integers."""
        return canonical_trace_masks(self, points)


def rays() -> HypothesisClass:
    return HypothesisClass(RAYS, 1)


def intervals() -> HypothesisClass:
    return HypothesisClass(INTERVALS, 1)


def halfspaces(dimension: int) -> HypothesisClass:
    return HypothesisClass(HALFSPACES, dimension)


@dataclass(frozen=True)
class Ray:
    """One-sided threshold set {x <= threshold} or {x >= threshold} (closed)."""

    orientation: str
    threshold: float

    def __post_init__(self) -> None:
        if self.orientation not in ("le", "ge"):
            raise ValueError(f"orientation must be 'le' or 'ge', got {self.orientation!r}")


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float
    closed_lower: bool = True
    closed_upper: bool = True

    def __post_init__(self) -> None:
        if not self.lower <= self.upper:
            raise ValueError(f"interval needs lower <= upper, got [{self.lower}, {self.upper}]")


@dataclass(frozen=True)
class Halfspace:
    """{x : normal . x >= offset}, or the open-boundary variant."""

    normal: tuple[float, ...]
    offset: float
    closed: bool = True

    def __post_init__(self) -> None:
        if not any(c != 0.0 for c in self.normal):
            raise ValueError("half-space normal must be nonzero")


Hypothesis = Ray | Interval | Halfspace


@dataclass(frozen=True)
class Distribution:
    kind: str
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.kind not in DISTRIBUTION_KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension!r}")
        if self.kind == UNIFORM01 and self.dimension != 1:
            raise ValueError("uniform01 is one-dimensional")


def uniform01() -> Distribution:
    return Distribution(UNIFORM01, 1)


def std_gaussian(dimension: int) -> Distribution:
    return Distribution(STD_GAUSSIAN, dimension)


@dataclass
class EmpiricalSample:
    """An i.i.d. draw of n points, with seed provenance; immutable after creation."""

    points: np.ndarray
    distribution: Distribution
    seed: int
    n: int = field(default=0)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("points must be a nonempty (n, d) array")
        if pts.shape[1] != self.distribution.dimension:
            raise ValueError(
                f"points have dimension {pts.shape[1]}, distribution has {self.distribution.dimension}"
            )
        if self.n and self.n != pts.shape[0]:
            raise ValueError(f"declared n={self.n} but got {pts.shape[0]} points")
        pts.flags.writeable = False
        self.points = pts
        self.n = pts.shape[0]


def _hypothesis_dimension(h: Hypothesis) -> int:
    return len(h.normal) if isinstance(h, Halfspace) else 1


def contains(h: Hypothesis, x) -> bool:
    """Exact membership of point ``x`` in hypothesis ``h`` (open/closed respected)."""
    if isinstance(h, Halfspace):
        x = np.asarray(x, dtype=np.float64).ravel()
        if x.size != len(h.normal):
            raise ValueError(f"point has dimension {x.size}, half-space has {len(h.normal)}")
        s = float(np.dot(np.asarray(h.normal, dtype=np.float64), x))
        return s >= h.offset if h.closed else s > h.offset
    xv = np.asarray(x, dtype=np.float64).ravel()
    if xv.size != 1:
        raise ValueError(f"1-D hypothesis applied to point of dimension {xv.size}")
    v = float(xv[0])
    if isinstance(h, Ray):
        return v <= h.threshold if h.orientation == "le" else v >= h.threshold
    lo_ok = v >= h.lower if h.closed_lower else v > h.lower
    hi_ok = v <= h.upper if h.closed_upper else v < h.upper
    return lo_ok and hi_ok


def _cdf_1d(dist: Distribution, x: float) -> float:
    if dist.kind == UNIFORM01:
        return min(max(x, 0.0), 1.0)
    return std_normal_cdf(x)


def true_probability(h: Hypothesis, dist: Distribution) -> float:
    """P(h) under the distribution, via closed forms (error <= 1e-12)."""
    hdim = _hypothesis_dimension(h)
    if isinstance(h, Halfspace):
        if hdim != dist.dimension:
            raise ValueError(f"half-space dimension {hdim} != distribution dimension {dist.dimension}")
        if dist.kind == STD_GAUSSIAN:
            norm = math.sqrt(math.fsum(c * c for c in h.normal))
            return 1.0 - std_normal_cdf(h.offset / norm)
        # uniform01 is 1-D; a half-line {w*x >= b} reduces to a ray
        w = h.normal[0]
        t = h.offset / w
        return 1.0 - _cdf_1d(dist, t) if w > 0 else _cdf_1d(dist, t)
    if dist.dimension != 1:
        raise ValueError(f"1-D hypothesis under {dist.dimension}-dimensional distribution")
    if isinstance(h, Ray):
        c = _cdf_1d(dist, h.threshold)
        return c if h.orientation == "le" else 1.0 - c
    return max(_cdf_1d(dist, h.upper) - _cdf_1d(dist, h.lower), 0.0)


def sample(dist: Distribution, n: int, seed: int) -> EmpiricalSample:
    """Draw n i.i.d. points; deterministic and platform-stable given (dist, n, seed).

    Uniform coordinates come from the counter-based stream in :mod:`vcbounds.rng`;
    gaussian coordinates apply Box-Muller to consecutive counter pairs.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n!r}")
    if dist.kind == UNIFORM01:
        pts = rng.uniform_stream(seed, n).reshape(n, 1)
    else:
        pts = rng.gaussian_stream(seed, n * dist.dimension).reshape(n, dist.dimension)
    return EmpiricalSample(points=pts, distribution=dist, seed=seed, n=n)


# ---------------------------------------------------------------------------
# Trace enumeration (canonical finite candidate families)
# ---------------------------------------------------------------------------


def _masks_from_bool(matrix: np.ndarray) -> set[int]:
    """Pack boolean membership columns (points x candidates) into mask ints."""
    r = matrix.shape[0]
    weights = (1 << np.arange(r, dtype=np.int64)).astype(np.int64)
    return set(int(v) for v in weights @ matrix.astype(np.int64))


def _cut_positions(values: np.ndarray) -> np.ndarray:
    """Candidate 1-D thresholds: the sample values, gap midpoints, and outer sentinels.

    Membership of {x <= t} changes only when t crosses a sample value, so this
    finite set realizes every ray/interval trace.
    """
    vals = np.unique(values)
    cuts = [vals[0] - 1.0]
    for a, b in zip(vals[:-1], vals[1:]):
        cuts.append(a)
        cuts.append(0.5 * (a + b))
    cuts.append(vals[-1])
    cuts.append(vals[-1] + 1.0)
    return np.asarray(cuts)


def _ray_trace_masks(x: np.ndarray) -> set[int]:
    cuts = _cut_positions(x)
    le = x[:, None] <= cuts[None, :]
    ge = x[:, None] >= cuts[None, :]
    return _masks_from_bool(np.concatenate([le, ge], axis=1))


def _interval_trace_masks(x: np.ndarray) -> set[int]:
    cuts = _cut_positions(x)
    k = cuts.size
    ge = x[:, None] >= cuts[None, :]
    le = x[:, None] <= cuts[None, :]
    masks: set[int] = {0}
    for i in range(k):
        block = ge[:, i : i + 1] & le[:, i:]
        masks |= _masks_from_bool(block)
    return masks


def _halfplane_pair_lines(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boundary lines through every pair of distinct points, with both indices.

    The indices let evaluators pin both points onto the boundary exactly:
    recomputing the second point's score in float can land it an ulp off the
    line, which silently merges the open-boundary trace into a neighbor.
    """
    n = pts.shape[0]
    normals: list[tuple[float, float]] = []
    first: list[int] = []
    second: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            dx = pts[j, 0] - pts[i, 0]
            dy = pts[j, 1] - pts[i, 1]
            if dx == 0.0 and dy == 0.0:
                continue
            normals.append((-dy, dx))
            first.append(i)
            second.append(j)
    return (
        np.asarray(normals, dtype=np.float64).reshape(-1, 2),
        np.asarray(first, dtype=np.intp),
        np.asarray(second, dtype=np.intp),
    )


def _halfplane_pivot_lines_for_traces(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Single-point pivot lines at angular midpoints between directions to the others.

    Traces change only when a pivoting boundary sweeps past a point, so the
    midpoints (plus the circular wrap) realize every trace whose boundary
    touches exactly one sample point.
    """
    n = pts.shape[0]
    normals: list[tuple[float, float]] = []
    anchors: list[int] = []
    for i in range(n):
        diffs = pts - pts[i]
        nz = (diffs[:, 0] != 0.0) | (diffs[:, 1] != 0.0)
        angles = np.mod(np.arctan2(diffs[nz, 1], diffs[nz, 0]), math.pi)
        if angles.size == 0:
            thetas = [0.0]
        else:
            uniq = np.unique(angles)
            mids = 0.5 * (uniq[:-1] + uniq[1:])
            wrap = math.fmod(0.5 * (uniq[-1] + uniq[0] + math.pi), math.pi)
            thetas = list(mids) + [wrap]
        for theta in thetas:
            normals.append((-math.sin(theta), math.cos(theta)))
            anchors.append(i)
    return np.asarray(normals, dtype=np.float64).reshape(-1, 2), np.asarray(anchors, dtype=np.intp)


def _boundary_pinned_scores(
    pts: np.ndarray,
    normals: np.ndarray,
    first: np.ndarray,
    second: np.ndarray | None,
) -> tuple[np.ndarray, np.ndarray]:
    """Score matrix relative to each line, with the defining points exactly at 0."""
    scores = pts @ normals.T
    cols = np.arange(normals.shape[0])
    offsets = scores[first, cols]
    rel = scores - offsets[None, :]
    rel[first, cols] = 0.0
    if second is not None:
        rel[second, cols] = 0.0
    return rel, offsets


def _halfplane_trace_masks(pts: np.ndarray) -> set[int]:
    masks: set[int] = set()
    pair_normals, first, second = _halfplane_pair_lines(pts)
    groups = [(pair_normals, first, second)]
    pivot_normals, anchors = _halfplane_pivot_lines_for_traces(pts)
    groups.append((pivot_normals, anchors, None))
    for normals, a1, a2 in groups:
        if normals.shape[0] == 0:
            continue
        rel, _ = _boundary_pinned_scores(pts, normals, a1, a2)
        masks |= _masks_from_bool(rel >= 0.0)
        masks |= _masks_from_bool(rel > 0.0)
        masks |= _masks_from_bool(rel <= 0.0)
        masks |= _masks_from_bool(rel < 0.0)
    return masks


def _as_points(points, dimension: int) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or (pts.size and pts.shape[1] != dimension):
        raise ValueError(f"points must have shape (r, {dimension})")
    return pts


def canonical_trace_masks(cls: HypothesisClass, points) -> set[int]:
    """All distinct subsets of ``points`` carved out by members of the class.

    Exact for rays, intervals, and half-spaces of dimension <= 2; higher
    dimensions have no implemented boundary enumeration.
    """
    pts = _as_points(points, cls.dimension)
    if pts.shape[0] == 0:
        return {0}
    if cls.kind == RAYS:
        return _ray_trace_masks(pts[:, 0])
    if cls.kind == INTERVALS:
        return _interval_trace_masks(pts[:, 0])
    if cls.dimension == 1:
        return _ray_trace_masks(pts[:, 0])
    if cls.dimension == 2:
        return _halfplane_trace_masks(pts)
    raise UnsupportedClassError(
        f"trace enumeration supports half-spaces only up to dimension 2, got {cls.dimension}"
    )


# ---------------------------------------------------------------------------
# Exact supremum deviation
# ---------------------------------------------------------------------------


def _transform_to_uniform(s: EmpiricalSample) -> np.ndarray:
    """Probability integral transform: sorted CDF values of a 1-D sample."""
    x = s.points[:, 0]
    if s.distribution.kind == UNIFORM01:
        u = np.clip(x, 0.0, 1.0)
    else:
        u = np.array([std_normal_cdf(v) for v in x])
    return np.sort(u)


def _rays_sup(u_sorted: np.ndarray) -> float:
    """Two-sided KS statistic: exact sup deviation over both ray orientations."""
    n = u_sorted.size
    right = np.searchsorted(u_sorted, u_sorted, side="right")
    left = np.searchsorted(u_sorted, u_sorted, side="left")
    d_plus = float(np.max(right / n - u_sorted))
    d_minus = float(np.max(u_sorted - left / n))
    return max(d_plus, d_minus, 0.0)


def _interval_sup_parts(u_sorted: np.ndarray) -> tuple[float, float]:
    """(sup of d_n - P, sup of P - d_n) over all intervals, exactly.

    Positive part: the optimum shrinks to a closed interval [u_i, u_j] spanned
    by sample values; with rank counts the objective splits as A[j] - B[i],
    so a running minimum gives the max over i <= j in one pass.  Negative
    part: the optimum widens to an open interval between consecutive sample
    values (or the domain ends); same separable structure over the augmented
    value list.  Ties are handled through left/right ranks.
    """
    n = u_sorted.size
    left = np.searchsorted(u_sorted, u_sorted, side="left")
    right = np.searchsorted(u_sorted, u_sorted, side="right")

    a = right / n - u_sorted
    b = left / n - u_sorted
    pos = float(np.max(a - np.minimum.accumulate(b)))

    # open-interval endpoints are value-based: dedupe so every pair is strict
    v = np.unique(np.concatenate(([0.0], u_sorted, [1.0])))
    lv = np.searchsorted(u_sorted, v, side="left")
    rv = np.searchsorted(u_sorted, v, side="right")
    c = v - lv / n
    d = v - rv / n
    prefix_min = np.minimum.accumulate(d)
    neg = float(np.max(c[1:] - prefix_min[:-1]))
    return pos, max(neg, 0.0)


def _halfplane_pivot_lines_for_sup(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Measure-stationary pivot lines: normal along the point's radius vector.

    Rotating a boundary around one sample point, the half-plane's gaussian
    measure is stationary exactly when the normal aligns with the pivot's
    direction from the origin.  Axis-normal lines through each point are
    added as cheap safety candidates (they cover a pivot at the origin).
    """
    normals: list[tuple[float, float]] = []
    anchors: list[int] = []
    for i in range(pts.shape[0]):
        px, py = pts[i, 0], pts[i, 1]
        r = math.hypot(px, py)
        if r > 0.0:
            normals.append((px / r, py / r))
            anchors.append(i)
        normals.append((1.0, 0.0))
        anchors.append(i)
        normals.append((0.0, 1.0))
        anchors.append(i)
    return np.asarray(normals, dtype=np.float64).reshape(-1, 2), np.asarray(anchors, dtype=np.intp)


def _halfplane_sup(s: EmpiricalSample) -> float:
    """Max deviation over pair-supported and pivot-stationary half-planes.

    Per fixed trace the deviation is maximized at extremal measure, which
    occurs on these boundaries; on each line the deviation is convex in the
    number of boundary points included, so only the all-in and all-out
    variants matter.  Complements carry identical deviation, so two
    comparisons per line suffice.
    """
    pts = s.points
    n = pts.shape[0]
    pair_normals, first, second = _halfplane_pair_lines(pts)
    pivot_normals, anchors = _halfplane_pivot_lines_for_sup(pts)

    best = 0.0
    chunk = 20_000
    for normals, a1, a2 in ((pair_normals, first, second), (pivot_normals, anchors, None)):
        for start in range(0, normals.shape[0], chunk):
            w = normals[start : start + chunk]
            i1 = a1[start : start + chunk]
            i2 = a2[start : start + chunk] if a2 is not None else None
            rel, offsets = _boundary_pinned_scores(pts, w, i1, i2)
            norms = np.hypot(w[:, 0], w[:, 1])
            pp = np.array([1.0 - std_normal_cdf(t) for t in offsets / norms])
            count_ge = (rel >= 0.0).sum(axis=0) / n
            count_gt = (rel > 0.0).sum(axis=0) / n
            dev = np.maximum(np.abs(count_ge - pp), np.abs(count_gt - pp))
            best = max(best, float(dev.max()))
    return best


def ensure_sup_supported(cls: HypothesisClass, dist: Distribution, n: int) -> None:
    """Raise if (class, distribution, n) is outside the exact-supremum support."""
    if cls.kind in (RAYS, INTERVALS):
        if dist.dimension != 1:
            raise UnsupportedClassError("1-D families need a 1-D distribution")
        if n > INTERVAL_N_LIMIT:
            raise SizeLimitError(f"n={n} exceeds the 1-D supremum guard {INTERVAL_N_LIMIT}")
        return
    if cls.dimension != 2:
        raise UnsupportedClassError("exact half-space supremum is implemented for dimension 2 only")
    if dist.kind != STD_GAUSSIAN or dist.dimension != 2:
        raise UnsupportedClassError("half-plane supremum requires the 2-D gaussian distribution")
    if n > HALFPLANE_N_LIMIT:
        raise SizeLimitError(f"n={n} exceeds the half-plane supremum guard {HALFPLANE_N_LIMIT}")


def sup_deviation_exact(s: EmpiricalSample, cls: HypothesisClass) -> float:
    """Exact sup over the family of |empirical - true probability| for this sample.

    Rays and intervals work on CDF-transformed points for any built-in 1-D
    law (n <= 10**4); half-planes require the 2-D gaussian law (n <= 300).
    """
    ensure_sup_supported(cls, s.distribution, s.n)
    if cls.kind in (RAYS, INTERVALS):
        u = _transform_to_uniform(s)
        if cls.kind == RAYS:
            return _rays_sup(u)
        pos, neg = _interval_sup_parts(u)
        return max(pos, neg)
    return _halfplane_sup(s)


# ---------------------------------------------------------------------------
# Sample serialization
# ---------------------------------------------------------------------------


def save_sample(s: EmpiricalSample, path: str | Path) -> Path:
    """Write the sample as CSV plus a sidecar manifest for reproducibility.

    CSV header is ``index,coord_0[,coord_1,...]``; floats are serialized as
    shortest round-trip decimals.  Returns the manifest path.
    """
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index"] + [f"coord_{k}" for k in range(s.distribution.dimension)])
        for i, row in enumerate(s.points):
            writer.writerow([i] + [repr(float(v)) for v in row])
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    manifest = {
        "schema_version": SAMPLE_SCHEMA_VERSION,
        "seed": s.seed,
        "distribution": {"kind": s.distribution.kind, "dimension": s.distribution.dimension},
        "n": s.n,
        "data_sha256": digest,
    }
    manifest_path = path.with_name(path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path


def load_sample(path: str | Path) -> EmpiricalSample:
    """Read a sample written by :func:`save_sample` (values round-trip exactly)."""
    path = Path(path)
    manifest = json.loads(path.with_name(path.name + ".manifest.json").read_text())
    dist = Distribution(manifest["distribution"]["kind"], manifest["distribution"]["dimension"])
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        width = len(header) - 1
        rows = [[float(v) for v in row[1:]] for row in reader]
    pts = np.asarray(rows, dtype=np.float64).reshape(len(rows), width)
    return EmpiricalSample(points=pts, distribution=dist, seed=manifest["seed"], n=manifest["n"])
