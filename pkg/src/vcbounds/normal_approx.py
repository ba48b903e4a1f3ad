"""Standard normal CDF, upper tail, and the classical Gaussian tail bound.

The upper tail carries a log-space companion so deviation bounds stay usable
when the standardized threshold reaches 30-40 and the tail itself underflows
binary64.  Values come from the platform erfc (a few ulp); the log switches to
an adaptively truncated asymptotic expansion once direct log(erfc) would lose
accuracy or underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# erfc(x/sqrt(2)) leaves the normal binary64 range near x = 37.6; the
# asymptotic log expansion is already accurate to ~1e-15 by x = 26.
_ASYMPTOTIC_CUTOFF = 26.0
_VALUE_UNDERFLOW_CUTOFF = 37.0


@dataclass(frozen=True)
class TailValue:
    """A probability together with its natural log.

    ``value == exp(log_value)`` to 1e-12 relative whenever value > 1e-300;
    below that, value degrades to subnormal/zero while log_value stays exact.
    """

    value: float
    log_value: float


def _require_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x!r}")
    return x


def std_normal_cdf(x: float) -> float:
    """CDF of the standard normal distribution, absolute error below 1e-14."""
    x = _require_finite(x)
    return 0.5 * math.erfc(-x / _SQRT2)


def _log_tail_asymptotic(x: float) -> float:
    """log(1 - Phi(x)) for large x via the divergent tail expansion.

    Partial sums of sum_k (-1)^k (2k-1)!!/x^(2k) bracket the limit, so the
    truncation error is below the first omitted term; terms are added while
    they shrink, which at x >= 26 reaches ~1e-15 relative long before the
    divergent growth sets in.
    """
    inv_x2 = 1.0 / (x * x)
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        next_term = -term * (2 * k - 1) * inv_x2
        if abs(next_term) >= abs(term) or abs(next_term) < 1e-17 * total:
            break
        term = next_term
        total += term
    return -0.5 * x * x - math.log(x) - _LOG_SQRT_2PI + math.log(total)


def std_normal_upper_tail(x: float) -> TailValue:
    """1 - Phi(x) with a log-space companion accurate far into the tail.

    Relative error is below 1e-10 for x in [-10, 40]; for x beyond ~37.6 the
    plain value flushes to subnormal/zero but log_value remains finite and
    accurate (the asymptotic route is exact to ~1e-15 there).
    """
    x = _require_finite(x)
    if x <= _ASYMPTOTIC_CUTOFF:
        value = 0.5 * math.erfc(x / _SQRT2)
        return TailValue(value=value, log_value=math.log(value) if value > 0.0 else -math.inf)
    log_value = _log_tail_asymptotic(x)
    if x <= _VALUE_UNDERFLOW_CUTOFF:
        value = 0.5 * math.erfc(x / _SQRT2)
    else:
        value = math.exp(log_value) if log_value > -745.0 else 0.0
    return TailValue(value=value, log_value=log_value)


def mills_upper_bound(x: float) -> TailValue:
    """Gaussian tail bound exp(-x**2/2) / (x * sqrt(2*pi)), valid for x > 0.

    Dominates 1 - Phi(x) everywhere on x > 0 and is asymptotically tight;
    computed in log space and then exponentiated.  A majorant, not a
    probability: it exceeds 1 (vacuously) for x below about 0.38 and is
    deliberately not clamped, so value == exp(log_value) always holds.
    """
    x = _require_finite(x)
    if x <= 0.0:
        raise ValueError(f"tail bound requires x > 0, got {x!r}")
    log_value = -0.5 * x * x - math.log(x) - _LOG_SQRT_2PI
    value = math.exp(log_value) if log_value > -745.0 else 0.0
    return TailValue(value=value, log_value=log_value)
