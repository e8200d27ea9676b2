"""Orthonormal filter pairs for the periodized transform"""
# pylint: disable = invalid-name
import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
import pywt

from nsdwav.errors import InvariantViolation, UnsupportedOrder

_ORTHONORMALITY_TOLERANCE = 1e-10


class WaveletFamily(Enum):
    """Supported compactly supported orthonormal families"""

    HAAR = "haar"
    DAUBECHIES = "db"
    COIFLET = "coif"


SUPPORTED_ORDERS = {
    WaveletFamily.HAAR: range(1, 2),
    WaveletFamily.DAUBECHIES: range(1, 11),
    WaveletFamily.COIFLET: range(1, 6),
}

_FAMILY_ALIASES = {
    "haar": WaveletFamily.HAAR,
    "db": WaveletFamily.DAUBECHIES,
    "daubechies": WaveletFamily.DAUBECHIES,
    "coif": WaveletFamily.COIFLET,
    "coiflet": WaveletFamily.COIFLET,
}


@dataclass(frozen=True)
class WaveletBasis:
    """A lowpass/highpass filter pair realizing the scaling function and wavelet.

    The highpass taps follow the quadrature-mirror rule
    ``g_k = (-1)**k * h_{L-1-k}``.
    """

    family: WaveletFamily
    order: int
    lowpass: np.ndarray
    highpass: np.ndarray
    vanishing_moments: int

    @property
    def length(self) -> int:
        """Filter length ``L``"""
        return self.lowpass.size

    @property
    def name(self) -> str:
        """Short name, e.g. ``haar``, ``db4`` or ``coif3``"""
        if self.family is WaveletFamily.HAAR:
            return "haar"
        return f"{self.family.value}{self.order}"

    def __repr__(self):
        return f"WaveletBasis({self.name}, L={self.length})"


def quadrature_mirror(lowpass: np.ndarray) -> np.ndarray:
    """Highpass taps ``g_k = (-1)**k h_{L-1-k}`` of an orthonormal lowpass filter"""
    signs = np.where(np.arange(lowpass.size) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


def _pywt_name(family: WaveletFamily, order: int) -> str:
    if family is WaveletFamily.HAAR:
        return "haar"
    return f"{family.value}{order}"


def _check_orthonormal(lowpass: np.ndarray, name: str):
    """Verify ``sum_k h_k h_{k+2m} = delta_m`` for every shift"""
    length = lowpass.size
    for shift in range(0, length, 2):
        inner = float(np.dot(lowpass[: length - shift], lowpass[shift:]))
        expected = 1.0 if shift == 0 else 0.0
        if abs(inner - expected) > _ORTHONORMALITY_TOLERANCE:
            raise InvariantViolation(
                f"Filter {name} is not orthonormal at shift {shift}: {inner!r}"
            )


@lru_cache(maxsize=None)
def _make_basis(family: WaveletFamily, order: int) -> WaveletBasis:
    if order not in SUPPORTED_ORDERS[family]:
        supported = SUPPORTED_ORDERS[family]
        raise UnsupportedOrder(
            f"No tabulated {family.name.lower()} filter of order {order} "
            f"(supported: {supported.start}..{supported.stop - 1})"
        )
    name = _pywt_name(family, order)
    wavelet = pywt.Wavelet(name)
    lowpass = np.asarray(wavelet.rec_lo, dtype=float)
    lowpass = lowpass * (np.sqrt(2.0) / lowpass.sum())
    _check_orthonormal(lowpass, name)
    lowpass.setflags(write=False)
    highpass = quadrature_mirror(lowpass)
    highpass.setflags(write=False)
    moments = wavelet.vanishing_moments_psi or order
    logging.debug("Built %s basis with %d taps", name, lowpass.size)
    return WaveletBasis(family, order, lowpass, highpass, int(moments))


def make_basis(family: Union[WaveletFamily, str], order: int = 1) -> WaveletBasis:
    """Build the orthonormal basis of a wavelet family and order.

    Parameters
    ----------
    family: Union[WaveletFamily, str]
        ``haar``, ``db``/``daubechies`` or ``coif``/``coiflet``
    order: int
        Haar supports order 1, Daubechies 1-10 and Coiflets 1-5.

    Returns
    -------
    :class:`WaveletBasis`
        A basis with taps normalized to ``sum h = sqrt(2)``.

    Raises
    ------
    UnsupportedOrder
        If the (family, order) pair has no tabulated filter.
    """
    if isinstance(family, str):
        try:
            family = _FAMILY_ALIASES[family.lower()]
        except KeyError as exc:
            raise UnsupportedOrder(f"Unknown wavelet family '{family}'") from exc
    return _make_basis(family, int(order))


def parse_wavelet(name: str) -> Tuple[WaveletFamily, int]:
    """Parse ``haar``, ``dbK``, ``coifK`` (or ``daubechiesK``, ``coifletK``)."""
    match = re.fullmatch(r"([a-z]+?)(\d*)", name.strip().lower())
    if match is None or match.group(1) not in _FAMILY_ALIASES:
        raise UnsupportedOrder(f"Unsupported wavelet '{name}' (use haar, dbK or coifK)")
    family = _FAMILY_ALIASES[match.group(1)]
    if not match.group(2):
        if family is not WaveletFamily.HAAR:
            raise UnsupportedOrder(f"Wavelet '{name}' is missing its order")
        return family, 1
    return family, int(match.group(2))


def basis_from_name(name: str) -> WaveletBasis:
    """Shorthand for ``make_basis(*parse_wavelet(name))``"""
    return make_basis(*parse_wavelet(name))
