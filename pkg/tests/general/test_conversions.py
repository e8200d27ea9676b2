# pylint: disable=import-error, wrong-import-position, wrong-import-order, invalid-name
"""Implicit conversion test suite"""
import pytest

from common import *

from nsdwav.errors import DataError, LengthMismatch
from nsdwav.utils.data_conversions import (
    data_conversion_docstring,
    paired_samples,
    samples_of,
    signal_convert,
)


def test_list_to_signal():
    """A list of floats becomes an observed signal"""
    signal = signal_convert([1.0, 2.0, 3.0, 4.0])
    assert signal.kind is SignalKind.OBSERVED
    assert np.array_equal(signal.samples, [1.0, 2.0, 3.0, 4.0])


def test_numpy_to_signal():
    """Arrays keep their values and take the requested kind"""
    signal = signal_convert(np.arange(8.0), SignalKind.TRUTH)
    assert signal.kind is SignalKind.TRUTH
    assert signal.n == 8


def test_series_to_signal():
    """Series are read by position"""
    series = pd.Series([4.0, 3.0, 2.0, 1.0], index=[10, 11, 12, 13])
    assert np.array_equal(samples_of(series), [4.0, 3.0, 2.0, 1.0])


def test_dataframe_to_signal():
    """A frame with an x column and one value column converts"""
    frame = pd.DataFrame({"x": [0.5, 1.0], "y": [3.0, 5.0]})
    assert np.array_equal(samples_of(frame), [3.0, 5.0])
    with pytest.raises(DataError):
        signal_convert(pd.DataFrame({"x": [0.5, 1.0], "y": [1.0, 2.0], "z": [0.0, 0.0]}))


def test_signal_passthrough():
    """Signals are returned unchanged"""
    signal = random_signal(16)
    assert signal_convert(signal, SignalKind.TRUTH) is signal


def test_bad_samples():
    """Text, wrong lengths and non-finite values are data errors"""
    with pytest.raises(DataError):
        signal_convert(["a", "b"])
    with pytest.raises(DataError):
        signal_convert(np.zeros(6))
    with pytest.raises(DataError):
        signal_convert([0.0, np.inf])


def test_paired_samples():
    """Paired signals must share a length"""
    first, second = paired_samples([1.0, 2.0], np.array([3.0, 4.0]))
    assert np.array_equal(first + second, [4.0, 6.0])
    with pytest.raises(LengthMismatch):
        paired_samples(np.zeros(4), np.zeros(8))


def test_conversion_docstring():
    """Docstrings gain the accepted types, and unknown keys are refused"""

    @data_conversion_docstring("signal")
    def demo(observed):
        """observed : {}
        The observations, as a: {}"""
        return observed

    assert ":class:`Signal`" in demo.__doc__
    assert "A list of floats" in demo.__doc__
    with pytest.raises(ValueError):
        data_conversion_docstring("tabular")
