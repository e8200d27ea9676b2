"""Utility helpers"""
from .data_conversions import SignalUnionType, signal_convert
from .rng import derive_seed, philox_stream
