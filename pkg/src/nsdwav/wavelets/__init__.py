"""Orthonormal periodized discrete wavelet transform"""
from .basis import (
    SUPPORTED_ORDERS,
    WaveletBasis,
    WaveletFamily,
    basis_from_name,
    make_basis,
    parse_wavelet,
    quadrature_mirror,
)
from .pyramid import dwt, idwt
