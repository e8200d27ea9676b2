"""Threshold and resolution-level schedules.

All logarithms are natural logarithms.
"""
import math
from fractions import Fraction

from nsdwav.model import log2_length


def universal_threshold(sigma_sq: float, n: int) -> float:
    """``lambda0 = sqrt(2 sigma^2 ln n / n)``"""
    if n < 2:
        raise ValueError(f"The universal threshold needs n >= 2, got {n}")
    if sigma_sq < 0:
        raise ValueError(f"Variance must be non-negative, got {sigma_sq}")
    return math.sqrt(2.0 * sigma_sq * math.log(n) / n)


def term_level_cutoff(n: int) -> int:
    """Smallest ``i1`` with ``2**i1 >= n / ln n``, so that
    ``2**(i1 - 1) <= n / ln n <= 2**i1``."""
    log2_length(n)
    if n < 4:
        raise ValueError(f"The term-by-term cutoff needs n >= 4, got {n}")
    ratio = n / math.log(n)
    level = 0
    while 2**level < ratio:
        level += 1
    return level


def block_coarse_level(n: int, s: float) -> int:
    """Smallest ``i0`` with ``2**i0 >= n**(1 / (2s + 1))``.

    For ``n = 2**i2`` this is ``ceil(i2 / (2s + 1))``, evaluated in exact rational
    arithmetic so that exact powers resolve to the lower level.
    """
    finest_level = log2_length(n)
    if s <= 0:
        raise ValueError(f"Smoothness must be positive, got {s}")
    if math.isinf(s):
        return 0
    return math.ceil(Fraction(finest_level) / (2 * Fraction(s) + 1))


def block_length(n: int) -> int:
    """Block length ``l = max(1, round(ln n))``"""
    return max(1, int(round(math.log(n))))
