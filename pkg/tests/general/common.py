# pylint: disable=R0801
"""Common helpers for tests"""
import os
import sys

import numpy as np
import pandas as pd  # pylint: disable=unused-import

myPath = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, myPath + "/../../src")

from nsdwav.model import Signal, SignalKind
from nsdwav.utils.rng import philox_stream


def random_samples(n, seed=0):
    """Seeded standard normal samples"""
    return philox_stream(seed).standard_normal(n)


def random_signal(n, seed=0):
    """Seeded standard normal :class:`Signal`"""
    return Signal(random_samples(n, seed), SignalKind.OBSERVED)


def haar_matrix(n):
    """Orthonormal Haar analysis matrix whose rows follow ``CoefficientTree.flatten``:
    the scaling coefficient, then detail rows from coarse to fine."""
    if n == 1:
        return np.ones((1, 1))
    half = n // 2
    average = np.zeros((half, n))
    difference = np.zeros((half, n))
    for k in range(half):
        average[k, 2 * k : 2 * k + 2] = 1.0 / np.sqrt(2.0)
        difference[k, 2 * k] = 1.0 / np.sqrt(2.0)
        difference[k, 2 * k + 1] = -1.0 / np.sqrt(2.0)
    return np.vstack([haar_matrix(half) @ average, difference])


def haar_levels(n):
    """Resolution level of every row of :func:`haar_matrix`, ``-1`` for the scaling row"""
    levels = [-1]
    level = 0
    while 2**level < n:
        levels.extend([level] * 2**level)
        level += 1
    return np.array(levels)
