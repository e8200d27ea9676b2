"""Seeded noise models and Monte Carlo checks of negative super-additive dependence"""
from nsdwav.utils.rng import derive_seed

from .checks import (
    SUPERADDITIVE_BATTERY,
    CheckReport,
    CovDecayProfile,
    cov_decay_profile,
    run_noise_checks,
    superadditivity_check,
    supermodular_check,
    weighted_variance_check,
)
from .models import (
    IidGaussian,
    IndependentPairs,
    NoiseModel,
    NsdPairMixture,
    generate,
    generate_batch,
)
