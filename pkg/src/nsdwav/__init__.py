# pylint: disable = invalid-name
"""Wavelet thresholding toolkit for regression with negatively super-additive dependent noise"""
import os
import logging

from .version import __version__

if os.getenv("NSDWAV_DEBUG") == "1":
    _LOGGING_LEVEL = logging.DEBUG
else:
    _LOGGING_LEVEL = logging.WARN

logging.basicConfig(level=_LOGGING_LEVEL)
