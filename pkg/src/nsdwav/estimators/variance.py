"""Noise-variance estimators based on first differences"""
import logging

import numpy as np

from nsdwav.errors import BlockOutOfRange, SignalTooShort
from nsdwav.utils.data_conversions import SignalUnionType, samples_of

MIN_WINDOW = 16


def sigma_hat_first_difference(observed: SignalUnionType) -> float:
    """Global variance estimate ``sum (Y_{m+1} - Y_m)^2 / (2 (n - 1))``.

    Returns the variance (not the standard deviation).
    """
    samples = samples_of(observed)
    if samples.size < 2:
        raise SignalTooShort("The first-difference estimator needs n >= 2")
    differences = np.diff(samples)
    return float(np.dot(differences, differences) / (2.0 * (samples.size - 1)))


def local_window(n: int, level: int) -> int:
    """Window width ``max(16, n / 2**level)`` clipped to ``[2, n]``"""
    return int(min(n, max(2, MIN_WINDOW, n >> level)))


def block_design_indices(n: int, level: int, starts: np.ndarray, stops: np.ndarray):
    """0-based index of the design point ``x_ik`` nearest to ``2**-level`` times the
    middle of each block ``[start, stop)``."""
    middle = (starts + stops) / 2.0 / 2**level
    return np.clip(np.rint(middle * n).astype(int) - 1, 0, n - 1)


def local_variances(
    observed: SignalUnionType, level: int, block_length: int
) -> np.ndarray:
    """Local first-difference variance estimate for every block of a level.

    Each estimate uses ``w = local_window(n, level)`` consecutive samples centred at the
    block's design point, wrapping periodically at the ends of the grid.
    """
    samples = samples_of(observed)
    n = samples.size
    if level < 0 or 2**level > n:
        raise BlockOutOfRange(f"Level {level} does not exist for n = {n}")
    starts = np.arange(0, 2**level, block_length)
    stops = np.minimum(starts + block_length, 2**level)
    centres = block_design_indices(n, level, starts, stops)
    width = local_window(n, level)
    index = (centres[:, None] - width // 2 + np.arange(width)[None, :]) % n
    differences = np.diff(samples[index], axis=1)
    estimates = np.sum(differences**2, axis=1) / (2.0 * (width - 1))
    if np.any(estimates == 0.0):
        logging.warning(
            "Level %d has %d windows with zero variance estimate",
            level,
            int(np.sum(estimates == 0.0)),
        )
    return estimates


def sigma_hat_local(
    observed: SignalUnionType, level: int, block_index: int, block_length: int
) -> float:
    """Variance estimate ``sigma^2(x_ik)`` for block ``k`` of ``level``.

    Raises
    ------
    BlockOutOfRange
        If the block does not exist at this level.
    """
    n = samples_of(observed).size
    if block_length < 1:
        raise BlockOutOfRange(f"Block length must be positive, got {block_length}")
    block_count = -(-(2**level) // block_length) if 0 <= level and 2**level <= n else 0
    if not 0 <= block_index < block_count:
        raise BlockOutOfRange(
            f"Block {block_index} does not exist at level {level} "
            f"with block length {block_length}"
        )
    return float(local_variances(observed, level, block_length)[block_index])
