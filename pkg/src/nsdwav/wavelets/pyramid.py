"""Periodized Mallat pyramid: forward and inverse orthonormal DWT"""
from functools import lru_cache
from typing import Union

import numpy as np

from nsdwav.errors import LevelOutOfRange, SignalTooShort
from nsdwav.model import CoefficientTree, Signal, SignalKind
from nsdwav.utils.data_conversions import SignalUnionType, signal_convert

from .basis import WaveletBasis


@lru_cache(maxsize=256)
def _periodic_index(period: int, length: int) -> np.ndarray:
    """``(2k + j) mod period`` for output ``k`` and tap ``j``"""
    index = (2 * np.arange(period // 2)[:, None] + np.arange(length)[None, :]) % period
    index.setflags(write=False)
    return index


def analysis_step(coefficients: np.ndarray, basis: WaveletBasis):
    """One pyramid stage: circular correlation with both filters, keeping even outputs."""
    window = coefficients[_periodic_index(coefficients.size, basis.length)]
    return window @ basis.lowpass, window @ basis.highpass


def synthesis_step(approx: np.ndarray, detail: np.ndarray, basis: WaveletBasis):
    """Adjoint of :func:`analysis_step`"""
    period = 2 * approx.size
    index = _periodic_index(period, basis.length)
    contributions = np.outer(approx, basis.lowpass) + np.outer(detail, basis.highpass)
    return np.bincount(index.ravel(), weights=contributions.ravel(), minlength=period)


def _check_levels(coarse_level: int, finest_level: int):
    if not 0 <= coarse_level <= finest_level:
        raise LevelOutOfRange(
            f"Coarse level {coarse_level} outside [0, {finest_level}]"
        )


def dwt(
    signal: SignalUnionType, basis: WaveletBasis, coarse_level: int
) -> CoefficientTree:
    """Forward periodized transform down to ``coarse_level``.

    Parameters
    ----------
    signal: SignalUnionType
        Samples treated as finest-level scaling coefficients.
    basis: WaveletBasis
        Analysis filters.
    coarse_level: int
        Level ``i0`` of the returned approximation, ``0 <= i0 <= log2 n``.

    Returns
    -------
    :class:`CoefficientTree`

    Raises
    ------
    LevelOutOfRange
        If ``coarse_level`` is outside ``[0, log2 n]``.
    SignalTooShort
        If the signal is shorter than the filter.
    """
    signal = signal_convert(signal)
    finest_level = signal.finest_level
    _check_levels(coarse_level, finest_level)
    if signal.n < basis.length and coarse_level < finest_level:
        raise SignalTooShort(
            f"{basis.name} needs at least {basis.length} samples, got {signal.n}"
        )
    current = signal.samples
    details = []
    for _ in range(finest_level - coarse_level):
        current, detail = analysis_step(current, basis)
        details.append(detail)
    return CoefficientTree(coarse_level, finest_level, current, tuple(reversed(details)))


def idwt(
    tree: CoefficientTree,
    basis: WaveletBasis,
    kind: Union[SignalKind, None] = SignalKind.FITTED,
) -> Signal:
    """Inverse of :func:`dwt`: ``idwt(dwt(s, b, i0), b) == s`` up to rounding."""
    _check_levels(tree.coarse_level, tree.finest_level)
    current = np.asarray(tree.approx)
    for detail in tree.details:
        current = synthesis_step(current, detail, basis)
    return Signal(current, kind)
