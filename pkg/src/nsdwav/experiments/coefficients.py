"""Empirical risk of individual wavelet coefficients under dependent noise"""
# pylint: disable = too-many-arguments
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from nsdwav.estimators import empirical_tree
from nsdwav.model import Signal
from nsdwav.noise import NoiseModel, generate_batch
from nsdwav.results import WaveletResults
from nsdwav.utils.rng import derive_seed
from nsdwav.wavelets import WaveletBasis


@dataclass(frozen=True)
class CoefficientRiskProfile(WaveletResults):
    """Per ``(n, level)`` scaled moments of the coefficient errors.

    ``second_moment`` is ``n max_j E(beta_ij_hat - beta_ij)^2`` and ``fourth_moment`` is
    ``n max_j E(beta_ij_hat - beta_ij)^4 / 2^i``; both stay bounded in ``n`` when the
    noise covariances are summable.
    """

    table: pd.DataFrame

    def as_dataframe(self) -> pd.DataFrame:
        return self.table


def coefficient_risk_profile(
    noise: NoiseModel,
    n_values: Sequence[int],
    basis: WaveletBasis,
    coarse_level: int,
    replicates: int,
    seed: int,
) -> CoefficientRiskProfile:
    """Monte Carlo moments of ``beta_ij_hat - beta_ij`` for unit-variance noise.

    The transform is linear, so the coefficient error of ``Y = g + eps`` is the empirical
    coefficient of the noise alone; the noise is rescaled to unit population variance.
    Sample size ``n`` draws its replicates from ``derive_seed(seed, n)``.
    """
    if replicates < 2:
        raise ValueError(f"Need at least 2 replicates, got {replicates}")
    rows = []
    for n in n_values:
        batch = generate_batch(noise, n, replicates, derive_seed(seed, n))
        batch /= math.sqrt(noise.population_sigma_sq)
        trees = [empirical_tree(Signal(row), basis, coarse_level) for row in batch]
        for offset, level in enumerate(trees[0].levels):
            errors = np.stack([tree.details[offset] for tree in trees])
            rows.append(
                {
                    "n": int(n),
                    "level": level,
                    "second_moment": float(n * np.max(np.mean(errors**2, axis=0))),
                    "fourth_moment": float(n * np.max(np.mean(errors**4, axis=0)) / 2**level),
                }
            )
    return CoefficientRiskProfile(
        pd.DataFrame(rows, columns=["n", "level", "second_moment", "fourth_moment"])
    )
