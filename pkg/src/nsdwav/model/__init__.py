# pylint: disable = invalid-name
"""Signal and coefficient value types"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Mapping, Sequence, Tuple

import numpy as np
import pandas as pd

from nsdwav.errors import DataError, InvariantViolation, LevelOutOfRange


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


def log2_length(n: int) -> int:
    """Return ``i`` such that ``n == 2**i``, raising :class:`DataError` otherwise."""
    if n < 1 or n & (n - 1):
        raise DataError(f"Signal length must be a power of two, got {n}")
    return n.bit_length() - 1


class SignalKind(Enum):
    """What the samples of a :class:`Signal` represent"""

    OBSERVED = "observed"
    TRUTH = "truth"
    FITTED = "fitted"


@dataclass(frozen=True)
class Signal:
    """``n = 2**i2`` equispaced samples on [0, 1].

    Sample ``m`` (1-based) is the value at the design point ``x_m = m / n``.
    """

    samples: np.ndarray
    kind: SignalKind = SignalKind.OBSERVED

    def __post_init__(self):
        samples = _frozen(self.samples)
        if samples.ndim != 1:
            raise DataError(f"Signal samples must be one-dimensional, got {samples.ndim}-d")
        if log2_length(samples.size) < 1:
            raise DataError("A signal needs at least two samples")
        if not np.all(np.isfinite(samples)):
            raise DataError("Signal samples must be finite")
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        """Number of samples"""
        return self.samples.size

    @property
    def finest_level(self) -> int:
        """``i2 = log2 n``"""
        return log2_length(self.n)

    @property
    def design_points(self) -> np.ndarray:
        """The grid ``x_m = m / n`` for ``m = 1..n``"""
        return np.arange(1, self.n + 1) / self.n

    def with_samples(self, samples, kind: SignalKind = None) -> "Signal":
        """A new signal on the same grid"""
        return Signal(samples, self.kind if kind is None else kind)

    def as_dataframe(self, value_name: str = "y") -> pd.DataFrame:
        """Two-column frame ``(x, value_name)``"""
        return pd.DataFrame({"x": self.design_points, value_name: self.samples})


@dataclass(frozen=True)
class CoefficientTree:
    """Approximation coefficients at ``coarse_level`` plus the detail coefficients of
    every level ``coarse_level <= i < finest_level``.

    ``details[k]`` holds the ``2**(coarse_level + k)`` coefficients of level
    ``coarse_level + k``.
    """

    coarse_level: int
    finest_level: int
    approx: np.ndarray
    details: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if not 0 <= self.coarse_level <= self.finest_level:
            raise InvariantViolation(
                f"Coarse level {self.coarse_level} outside [0, {self.finest_level}]"
            )
        approx = _frozen(self.approx)
        details = tuple(_frozen(d) for d in self.details)
        if approx.shape != (2**self.coarse_level,):
            raise InvariantViolation(
                f"Approximation has {approx.size} coefficients, "
                f"expected {2 ** self.coarse_level}"
            )
        if len(details) != self.finest_level - self.coarse_level:
            raise InvariantViolation(
                f"Tree holds {len(details)} detail levels, "
                f"expected {self.finest_level - self.coarse_level}"
            )
        for level, detail in zip(self.levels, details):
            if detail.shape != (2**level,):
                raise InvariantViolation(
                    f"Level {level} has {detail.size} coefficients, expected {2 ** level}"
                )
        object.__setattr__(self, "approx", approx)
        object.__setattr__(self, "details", details)

    @property
    def levels(self) -> range:
        """Detail levels in increasing order"""
        return range(self.coarse_level, self.finest_level)

    @property
    def size(self) -> int:
        """Total number of coefficients, always ``2**finest_level``"""
        return self.approx.size + sum(d.size for d in self.details)

    @property
    def detail_count(self) -> int:
        """Number of detail coefficients"""
        return self.size - self.approx.size

    def detail(self, level: int) -> np.ndarray:
        """Detail coefficients of one level"""
        if level not in self.levels:
            raise LevelOutOfRange(
                f"Level {level} is not a detail level of this tree "
                f"({self.coarse_level}..{self.finest_level - 1})"
            )
        return self.details[level - self.coarse_level]

    def iter_details(self) -> Iterator[Tuple[int, np.ndarray]]:
        """Yield ``(level, coefficients)`` pairs from coarse to fine"""
        return zip(self.levels, self.details)

    def replace_details(self, details: Mapping[int, Sequence[float]]) -> "CoefficientTree":
        """Return a tree whose listed levels are replaced; others are shared."""
        updated = list(self.details)
        for level, values in details.items():
            self.detail(level)
            updated[level - self.coarse_level] = values
        return CoefficientTree(
            self.coarse_level, self.finest_level, self.approx, tuple(updated)
        )

    def masked(self, masks: Mapping[int, np.ndarray]) -> "CoefficientTree":
        """Zero every detail coefficient whose mask entry is ``False``"""
        return self.replace_details(
            {level: np.where(mask, self.detail(level), 0.0) for level, mask in masks.items()}
        )

    def energy(self) -> float:
        """Sum of squares over all coefficients"""
        return float(np.sum(self.approx**2) + sum(np.sum(d**2) for d in self.details))

    def flatten(self) -> np.ndarray:
        """Approximation followed by the details from coarse to fine"""
        return np.concatenate((self.approx,) + self.details)

    def level_energies(self) -> Dict[int, float]:
        """Detail energy per level"""
        return {level: float(np.sum(d**2)) for level, d in self.iter_details()}

    def allclose(self, other: "CoefficientTree", atol: float = 1e-10) -> bool:
        """Coefficientwise comparison of two trees with equal structure"""
        return (
            self.coarse_level == other.coarse_level
            and self.finest_level == other.finest_level
            and np.allclose(self.flatten(), other.flatten(), rtol=0.0, atol=atol)
        )
