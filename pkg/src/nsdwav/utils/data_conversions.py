"""Conversions from Python containers to nsdwav signals"""
# pylint: disable = consider-using-f-string, invalid-name
from typing import List, Union

import numpy as np
import pandas as pd

from nsdwav.errors import DataError, LengthMismatch
from nsdwav.model import Signal, SignalKind

# if an nsdwav function wants A signal, it should accept this union type:
SignalUnionType = Union[Signal, np.ndarray, pd.Series, pd.DataFrame, List[float]]


# universal docstrings for functions that use these data conversions ===============================
def data_conversion_docstring(*keys):
    r"""Using a list of keys, add descriptions of accepted signal datatypes to docstrings.
    Each key contributes two format arguments, one naming the union type and one describing
    the accepted objects as a plain-text, bulleted list, for example:

    observed : {}
        The observations, as a: {}
    """
    keylist = []
    for k in keys:
        if k in _conversion_docstrings:
            keylist += _conversion_docstrings[k]
        else:
            raise ValueError(
                "{} not in valid conversion docstring keys: {}".format(
                    k, list(_conversion_docstrings.keys())
                )
            )

    def dec(obj):
        obj.__doc__ = obj.__doc__.format(*keylist)
        return obj

    return dec


_conversion_docstrings = {
    "signal": [
        ":class:`Signal`, :class:`numpy.ndarray`, :class:`pandas.Series`, "
        ":class:`pandas.DataFrame` or List[float]",
        """

            * An nsdwav :class:`Signal`
            * Numpy array of shape ``[n]`` with ``n`` a power of two
            * Pandas Series with ``n`` rows
            * Pandas DataFrame with columns ``x`` and a value column, as read from CSV
            * A list of floats

        """,
    ],
}


def signal_convert(data: SignalUnionType, kind: SignalKind = SignalKind.OBSERVED) -> Signal:
    """Convert any of :data:`SignalUnionType` into a :class:`Signal`.

    A :class:`Signal` is returned unchanged; other containers take ``kind``.
    """
    if isinstance(data, Signal):
        return data
    if isinstance(data, pd.DataFrame):
        value_columns = [c for c in data.columns if c != "x"]
        if len(value_columns) != 1:
            raise DataError(
                "Expected a frame with an 'x' column and one value column, got {}".format(
                    list(data.columns)
                )
            )
        data = data[value_columns[0]]
    if isinstance(data, pd.Series):
        data = data.to_numpy(dtype=float)
    try:
        samples = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DataError(f"Cannot interpret samples as real numbers: {exc}") from exc
    return Signal(samples, kind)


def samples_of(data: SignalUnionType) -> np.ndarray:
    """The sample array of a signal-like object"""
    return signal_convert(data).samples


def paired_samples(first: SignalUnionType, second: SignalUnionType):
    """Sample arrays of two signals that must share a grid"""
    first, second = samples_of(first), samples_of(second)
    if first.shape != second.shape:
        raise LengthMismatch(
            f"Signals have different lengths: {first.size} and {second.size}"
        )
    return first, second
