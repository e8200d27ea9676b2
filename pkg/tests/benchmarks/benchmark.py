# pylint: disable=R0801
"""Timing benchmarks for the transform, the estimators and the noise generator"""
import os
import sys
import time

import pytest

myPath = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, myPath + "/../general/")
sys.path.insert(0, myPath + "/../../src/")

from common import random_signal

from nsdwav.estimators import DenoiseConfig, Method, WaveletDenoiser
from nsdwav.noise import NsdPairMixture, generate_batch
from nsdwav.wavelets import basis_from_name, dwt, idwt

SIGNAL = random_signal(2**14, seed=0)
COIF3 = basis_from_name("coif3")


@pytest.mark.benchmark(
    group="transform", min_rounds=10, timer=time.time, disable_gc=True, warmup=True
)
def test_dwt_coif3(benchmark):
    """Forward transform of 2^14 samples"""
    benchmark(dwt, SIGNAL, COIF3, 3)


@pytest.mark.benchmark(
    group="transform", min_rounds=10, timer=time.time, disable_gc=True, warmup=True
)
def test_idwt_coif3(benchmark):
    """Inverse transform of 2^14 samples"""
    tree = dwt(SIGNAL, COIF3, 3)
    benchmark(idwt, tree, COIF3)


@pytest.mark.benchmark(
    group="denoise", min_rounds=10, timer=time.time, disable_gc=True, warmup=True
)
def test_block_denoise(benchmark):
    """Block thresholding with local variances"""
    denoiser = WaveletDenoiser(COIF3, DenoiseConfig(method=Method.BLOCK))
    result = benchmark(denoiser.denoise, SIGNAL)
    benchmark.extra_info["kept"] = result.kept_detail_count


@pytest.mark.benchmark(
    group="denoise", min_rounds=10, timer=time.time, disable_gc=True, warmup=True
)
def test_term_denoise(benchmark):
    """Term-by-term thresholding"""
    denoiser = WaveletDenoiser(COIF3, DenoiseConfig(method=Method.TERM_BY_TERM))
    benchmark(denoiser.denoise, SIGNAL)


@pytest.mark.benchmark(
    group="noise", min_rounds=10, timer=time.time, disable_gc=True, warmup=True
)
def test_generate_batch(benchmark):
    """100 NSD sequences of length 1024"""
    benchmark(generate_batch, NsdPairMixture(), 1024, 100, 0)
