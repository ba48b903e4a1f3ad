"""Counter-based pseudo-random streams built on the splitmix64 finalizer.

Every value is a pure function of (seed, counter index), so streams can be
generated in any order, split across workers, or regenerated piecewise while
staying bit-identical.  The word at index k is

    word(seed, k) = mix64((seed + (k + 1) * GOLDEN_GAMMA) mod 2**64)

where mix64 is the splitmix64 output permutation (Steele, Lea & Flood).
Uniform doubles take the top 53 bits, giving values on [0, 1) with spacing
2**-53.  Gaussian pairs use the Box-Muller transform of two consecutive
uniforms; all integer arithmetic is exact, so reproducibility is limited only
by the platform's log/cos/sin rounding (at most 1 ulp on mainstream libms).
"""

from __future__ import annotations

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = 0xFFFFFFFFFFFFFFFF

_U64_GAMMA = np.uint64(GOLDEN_GAMMA)
_U64_M1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_M2 = np.uint64(0x94D049BB133111EB)
_SHIFT_30 = np.uint64(30)
_SHIFT_27 = np.uint64(27)
_SHIFT_31 = np.uint64(31)
_SHIFT_11 = np.uint64(11)
_INV_2_53 = 1.0 / float(1 << 53)
_TWO_PI = 2.0 * np.pi


def mix64(x: int) -> int:
    """Splitmix64 output permutation of a 64-bit word (scalar)."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def counter_seed(base_seed: int, index: int) -> int:
    """Derive the sub-stream seed for counter ``index`` (e.g. one MC trial).

    Pure 64-bit mixing of (base_seed, index); distinct indices give distinct,
    decorrelated seeds, which makes results independent of how trials are
    partitioned across workers.
    """
    return mix64((base_seed + (index + 1) * GOLDEN_GAMMA) & _MASK64)


def counter_seeds(base_seed: int, start: int, stop: int) -> np.ndarray:
    """Vectorized ``counter_seed`` for indices start..stop-1 (uint64 array)."""
    idx = np.arange(start + 1, stop + 1, dtype=np.uint64)
    return _mix_vec(np.uint64(base_seed & _MASK64) + idx * _U64_GAMMA)


def _mix_vec(x: np.ndarray) -> np.ndarray:
    """Splitmix64 output permutation applied elementwise to uint64 words."""
    x = (x ^ (x >> _SHIFT_30)) * _U64_M1
    x = (x ^ (x >> _SHIFT_27)) * _U64_M2
    return x ^ (x >> _SHIFT_31)


def _words(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Vector of raw 64-bit words at counters offset..offset+count-1."""
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    return _mix_vec(np.uint64(seed & _MASK64) + idx * _U64_GAMMA)


def uniforms_at(seeds: np.ndarray, counter: int) -> np.ndarray:
    """One uniform on [0, 1) per seed, all taken at the same counter index.

    Bit-identical to ``uniform_stream(seed, ...)[counter]`` for each seed;
    used to advance many trial streams in lockstep.
    """
    step = np.uint64(((counter + 1) * GOLDEN_GAMMA) & _MASK64)
    w = _mix_vec(seeds.astype(np.uint64) + step)
    return (w >> _SHIFT_11).astype(np.float64) * _INV_2_53


def uniform_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """``count`` uniforms on [0, 1) from the stream's counters starting at ``offset``."""
    return (_words(seed, count, offset) >> _SHIFT_11).astype(np.float64) * _INV_2_53


def gaussian_stream(seed: int, count: int) -> np.ndarray:
    """``count`` standard normal deviates via Box-Muller on consecutive uniforms.

    Each output pair consumes counters (2j, 2j+1): the radius uniform is
    shifted into (0, 1] to keep log finite, the angle uniform stays in [0, 1).
    """
    pairs = (count + 1) // 2
    w = _words(seed, 2 * pairs)
    u1 = ((w[0::2] >> _SHIFT_11).astype(np.float64) + 1.0) * _INV_2_53
    u2 = (w[1::2] >> _SHIFT_11).astype(np.float64) * _INV_2_53
    r = np.sqrt(-2.0 * np.log(u1))
    theta = _TWO_PI * u2
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:count]
