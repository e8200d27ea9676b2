"""Term-by-term and block hard-thresholding estimators"""
from .denoiser import (
    DenoiseConfig,
    DenoiseResult,
    Method,
    SigmaEstimator,
    WaveletDenoiser,
    denoise,
    empirical_tree,
    reconstruct,
)
from .schedules import (
    block_coarse_level,
    block_length,
    term_level_cutoff,
    universal_threshold,
)
from .thresholding import (
    block_energy,
    block_partition,
    block_threshold_apply,
    term_threshold_apply,
)
from .variance import local_variances, sigma_hat_first_difference, sigma_hat_local
