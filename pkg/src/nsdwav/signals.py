"""Deterministic test functions sampled on the design grid ``x_m = m / n``.

Provenance of the constants
---------------------------
``Spikes`` and ``Corner`` follow the forms used in the block-thresholding literature
(Cai, 1999, *Annals of Statistics* 27(3)):

* Spikes: ``15.6676 * sum_k h_k exp(-((x - t_k) / w_k)^2)`` with
  ``(t_k, h_k, a_k) = (0.23, 1, 500), (0.33, 2, 2000), (0.47, 4, 8000), (0.69, 3, 16000),
  (0.83, 1, 32000)`` and ``w_k = a_k^{-1/2}``.
* Corner: ``62.387 * 10 x^3 (1 - 4 x^2)`` on ``[0, 0.5]``,
  ``62.387 * 3 (0.125 - x^3) x^4`` on ``(0.5, 0.8]`` and ``62.387 * c (x - 1)^3`` on
  ``(0.8, 1]``, where ``c = 3 (0.125 - 0.8^3) 0.8^4 / (0.8 - 1)^3 ~ 59.4432`` makes the
  function continuous at 0.8. Its first derivative jumps at 0.5 and at 0.8.

The structural properties the tests rely on are five strict local maxima for Spikes
and a continuous Corner whose slope jumps by more than 100 at each knot.
"""
# pylint: disable = invalid-name
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from nsdwav.errors import ConstantSignal, SignalTooShort
from nsdwav.model import Signal, SignalKind, log2_length
from nsdwav.utils.data_conversions import SignalUnionType, samples_of

MIN_SAMPLE_LENGTH = 8

SPIKES_SCALE = 15.6676
SPIKES_BUMPS = (
    (0.23, 1.0, 500.0),
    (0.33, 2.0, 2000.0),
    (0.47, 4.0, 8000.0),
    (0.69, 3.0, 16000.0),
    (0.83, 1.0, 32000.0),
)

CORNER_SCALE = 62.387
CORNER_KNOTS = (0.5, 0.8)
CORNER_TAIL = 3.0 * (0.125 - 0.8**3) * 0.8**4 / (0.8 - 1.0) ** 3

POLYNOMIAL_COEFFICIENTS = (0.0, 0.0, 16.0, -32.0, 16.0)


class SignalName(Enum):
    """Built-in test functions"""

    SPIKES = "spikes"
    CORNER = "corner"
    SMOOTH_SINE = "smoothsine"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class TestFunction:
    """A named test function with its parameters.

    ``parameters`` holds the ``(location, height, width)`` triples for Spikes, the
    ``(scale, knot1, knot2, tail)`` constants for Corner and the power-series
    coefficients for Polynomial; SmoothSine has none.
    """

    __test__ = False

    name: SignalName
    parameters: Tuple = ()

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.name is SignalName.SPIKES:
            return SPIKES_SCALE * sum(
                height * np.exp(-(((x - location) / width) ** 2))
                for location, height, width in self.parameters
            )
        if self.name is SignalName.CORNER:
            scale, first_knot, second_knot, tail = self.parameters
            return scale * np.select(
                [x <= first_knot, x <= second_knot],
                [10.0 * x**3 * (1.0 - 4.0 * x**2), 3.0 * (0.125 - x**3) * x**4],
                tail * (x - 1.0) ** 3,
            )
        if self.name is SignalName.SMOOTH_SINE:
            return np.sin(2.0 * np.pi * x)
        return np.polynomial.polynomial.polyval(x, self.parameters)

    def normalization(self, n: int) -> float:
        """Population standard deviation of the samples on the ``n``-point grid"""
        return float(np.std(sample(self, n).samples))


def test_function(name) -> TestFunction:
    """The built-in test function called ``name`` (case-insensitive)"""
    name = SignalName(str(name.value if isinstance(name, SignalName) else name).lower())
    if name is SignalName.SPIKES:
        parameters = tuple(
            (location, height, width**-0.5) for location, height, width in SPIKES_BUMPS
        )
    elif name is SignalName.CORNER:
        parameters = (CORNER_SCALE,) + CORNER_KNOTS + (CORNER_TAIL,)
    elif name is SignalName.POLYNOMIAL:
        parameters = POLYNOMIAL_COEFFICIENTS
    else:
        parameters = ()
    return TestFunction(name, parameters)


test_function.__test__ = False


def sample(fn: TestFunction, n: int) -> Signal:
    """Evaluate ``fn`` at ``x_m = m / n`` for ``m = 1..n``.

    Parameters
    ----------
    fn: TestFunction
        The function to sample.
    n: int
        A power of two, at least 8.

    Returns
    -------
    :class:`Signal`
        A signal of kind ``TRUTH``.
    """
    log2_length(n)
    if n < MIN_SAMPLE_LENGTH:
        raise SignalTooShort(f"Test signals need n >= {MIN_SAMPLE_LENGTH}, got {n}")
    x = np.arange(1, n + 1) / n
    return Signal(fn(x), SignalKind.TRUTH)


def calibrate_snr(truth: SignalUnionType, target_snr: float) -> float:
    """Noise scale ``sigma = sd(truth) / target_snr``.

    ``sd`` is the population standard deviation over the grid.

    Raises
    ------
    ConstantSignal
        If the truth has zero standard deviation.
    """
    if not target_snr > 0:
        raise ValueError(f"Target SNR must be positive, got {target_snr}")
    samples = samples_of(truth)
    spread = float(np.std(samples))
    if spread == 0.0:
        raise ConstantSignal("Cannot calibrate noise against a constant signal")
    sigma = spread / target_snr
    logging.debug("SNR %s gives noise scale %.6g", target_snr, sigma)
    return sigma
