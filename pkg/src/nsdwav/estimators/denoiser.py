"""Estimators.denoiser module"""
# pylint: disable = too-many-instance-attributes, invalid-name
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from nsdwav.errors import ConfigError, SignalTooShort
from nsdwav.model import CoefficientTree, Signal, SignalKind
from nsdwav.results import WaveletResults
from nsdwav.utils.data_conversions import (
    SignalUnionType,
    data_conversion_docstring,
    signal_convert,
)
from nsdwav.wavelets import WaveletBasis, dwt, idwt

from .schedules import (
    block_coarse_level,
    block_length,
    term_level_cutoff,
    universal_threshold,
)
from .thresholding import block_mask, block_partition, term_mask
from .variance import local_variances, sigma_hat_first_difference


class Method(Enum):
    """Thresholding estimators"""

    TERM_BY_TERM = "term"
    BLOCK = "block"


class SigmaEstimator(Enum):
    """How the block rule estimates the noise variance"""

    FIRST_DIFFERENCE = "global"
    LOCAL_BLOCK = "local"


@dataclass(frozen=True)
class DenoiseConfig:
    """Configuration shared by both estimators.

    Parameters
    ----------
    method: Method
        (default= ``Method.BLOCK``) The estimator to run.
    smoothness_s: float
        (default= `2.0`) Assumed Besov regularity ``s``; sets the coarse level
        ``i0 = block_coarse_level(n, s)``.
    sigma_estimator: SigmaEstimator
        (default= ``SigmaEstimator.LOCAL_BLOCK``) For the block rule, use the local
        variance ``sigma^2(x_ik)`` of each block or the global first-difference estimate.
        The term-by-term rule always uses the global estimate.
    threshold_override: Optional[float]
        (default= `None`) Replaces ``lambda0`` (term-by-term) or ``lambda^2`` (block).
    coarse_level_override: Optional[int]
        (default= `None`) Replaces ``i0``.
    block_threshold_factor: float
        (default= `1.0`) Multiplier ``lambda*`` in ``lambda^2 = lambda* sigma^2 / n``.
    """

    method: Method = Method.BLOCK
    smoothness_s: float = 2.0
    sigma_estimator: SigmaEstimator = SigmaEstimator.LOCAL_BLOCK
    threshold_override: Optional[float] = None
    coarse_level_override: Optional[int] = None
    block_threshold_factor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "sigma_estimator", SigmaEstimator(self.sigma_estimator))
        if not self.smoothness_s > 0:
            raise ConfigError("must be positive", field="smoothness_s")
        if self.threshold_override is not None and not self.threshold_override > 0:
            raise ConfigError("must be positive", field="threshold_override")
        if self.coarse_level_override is not None and self.coarse_level_override < 0:
            raise ConfigError("must be non-negative", field="coarse_level_override")
        if not self.block_threshold_factor > 0:
            raise ConfigError("must be positive", field="block_threshold_factor")

    def with_method(self, method: Method) -> "DenoiseConfig":
        """A copy running another estimator"""
        return replace(self, method=Method(method))

    def coarse_level(self, n: int) -> int:
        """``i0`` for ``n`` samples"""
        finest_level = int(math.log2(n))
        if self.coarse_level_override is not None:
            if self.coarse_level_override > finest_level:
                raise ConfigError(
                    f"coarse level {self.coarse_level_override} exceeds log2 n = {finest_level}",
                    field="coarse_level_override",
                )
            return self.coarse_level_override
        return block_coarse_level(n, self.smoothness_s)


@dataclass(frozen=True)
class DenoiseResult(WaveletResults):
    """Output of :func:`denoise`.

    ``kept_tree`` differs from ``raw_tree`` only by zeroed detail coefficients, and
    ``fitted == idwt(kept_tree)`` rescaled to the sample grid. ``threshold_used`` is
    ``lambda0`` for the term-by-term rule and the mean ``lambda^2`` over all blocks for
    the block rule; ``sigma_hat`` is the variance estimate (mean over blocks when local).
    ``levels`` is ``(i0, i1)`` or ``(i0, i2)``.
    """

    method: Method
    fitted: Signal
    raw_tree: CoefficientTree
    kept_tree: CoefficientTree
    threshold_used: float
    levels: Tuple[int, int]
    sigma_hat: float
    kept_detail_count: int

    def as_dataframe(self) -> pd.DataFrame:
        """
        Returns
        -------
        pandas.DataFrame
            One row per detail level with the columns:

            * ``level``: Resolution level ``i``.
            * ``coefficients``: Number of coefficients ``2**i``.
            * ``kept``: Coefficients retained by the rule.
            * ``raw_energy``: Sum of squared empirical coefficients.
            * ``kept_energy``: Sum of squared retained coefficients.
        """
        rows = []
        for level, raw in self.raw_tree.iter_details():
            kept = self.kept_tree.detail(level)
            rows.append(
                {
                    "level": level,
                    "coefficients": raw.size,
                    "kept": int(np.count_nonzero(kept)),
                    "raw_energy": float(np.sum(raw**2)),
                    "kept_energy": float(np.sum(kept**2)),
                }
            )
        return pd.DataFrame(rows)

    def plot(self, observed=None, truth=None, block=True, call_show=True):
        """Plot the fitted curve, optionally over the observations and the true signal."""
        # pylint: disable = import-outside-toplevel, cyclic-import
        from nsdwav.visualizations import plot

        return plot(self, observed, truth, block=block, call_show=call_show)


@data_conversion_docstring("signal")
def empirical_tree(
    observed: SignalUnionType, basis: WaveletBasis, coarse_level: int
) -> CoefficientTree:
    """Empirical coefficients ``dwt(Y / sqrt(n))``.

    With this scaling a white-noise coefficient has standard deviation ``sigma / sqrt(n)``,
    matching the units of the universal threshold.

    Parameters
    ----------
    observed : {}
        The observations, as a: {}
    basis : WaveletBasis
        Analysis filters.
    coarse_level : int
        Level ``i0`` of the approximation coefficients.
    """
    observed = signal_convert(observed)
    scaled = observed.samples / math.sqrt(observed.n)
    return dwt(Signal(scaled, observed.kind), basis, coarse_level)


def reconstruct(tree: CoefficientTree, basis: WaveletBasis) -> Signal:
    """Invert :func:`empirical_tree`: ``sqrt(n) idwt(tree)``"""
    fitted = idwt(tree, basis)
    return fitted.with_samples(fitted.samples * math.sqrt(fitted.n), SignalKind.FITTED)


class WaveletDenoiser:
    """*"Which wavelet coefficients carry signal rather than noise?"*

    Runs either the term-by-term estimator, which keeps each coefficient above the
    universal threshold, or the block estimator, which keeps whole blocks of ``l ~ ln n``
    coefficients whose mean energy exceeds ``lambda^2``.
    """

    def __init__(self, basis: WaveletBasis, config: Optional[DenoiseConfig] = None, **kwargs):
        r"""Initialize the :class:`WaveletDenoiser`.

        Parameters
        ----------
        basis : WaveletBasis
            The wavelet basis used for analysis and synthesis.
        config : DenoiseConfig
            (default= ``DenoiseConfig()``) Estimator configuration.
        Keyword Arguments:
            Any :class:`DenoiseConfig` field, overriding ``config``.
        """
        config = config if config is not None else DenoiseConfig()
        self.config = replace(config, **kwargs) if kwargs else config
        self.basis = basis

    @data_conversion_docstring("signal")
    def denoise(self, observed: SignalUnionType) -> DenoiseResult:
        """Denoise one sequence of observations.

        Parameters
        ----------
        observed : {}
            The noisy observations ``Y_m``, as a: {}

        Returns
        -------
        :class:`DenoiseResult`
        """
        observed = signal_convert(observed)
        if observed.n < 4:
            raise SignalTooShort(f"Denoising needs at least 4 samples, got {observed.n}")
        coarse_level = self.config.coarse_level(observed.n)
        raw_tree = empirical_tree(observed, self.basis, coarse_level)
        if self.config.method is Method.TERM_BY_TERM:
            return self._term_by_term(observed, raw_tree)
        return self._block(observed, raw_tree)

    def _finish(self, method, raw_tree, masks, threshold, levels, sigma_hat):
        kept_tree = raw_tree.masked(masks)
        kept = int(sum(np.count_nonzero(mask) for mask in masks.values()))
        logging.debug(
            "%s kept %d of %d detail coefficients (threshold %.6g)",
            method.value,
            kept,
            raw_tree.detail_count,
            threshold,
        )
        return DenoiseResult(
            method=method,
            fitted=reconstruct(kept_tree, self.basis),
            raw_tree=raw_tree,
            kept_tree=kept_tree,
            threshold_used=float(threshold),
            levels=levels,
            sigma_hat=float(sigma_hat),
            kept_detail_count=kept,
        )

    def _term_by_term(self, observed: Signal, raw_tree: CoefficientTree) -> DenoiseResult:
        n = observed.n
        sigma_sq = sigma_hat_first_difference(observed)
        if self.config.threshold_override is not None:
            lambda0 = self.config.threshold_override
        else:
            lambda0 = universal_threshold(sigma_sq, n)
        cutoff = term_level_cutoff(n)
        masks = term_mask(raw_tree, lambda0, cutoff)
        return self._finish(
            Method.TERM_BY_TERM,
            raw_tree,
            masks,
            lambda0,
            (raw_tree.coarse_level, cutoff),
            sigma_sq,
        )

    def _block(self, observed: Signal, raw_tree: CoefficientTree) -> DenoiseResult:
        n = observed.n
        length = block_length(n)
        factor = self.config.block_threshold_factor
        if self.config.sigma_estimator is SigmaEstimator.LOCAL_BLOCK:
            variances = {
                level: local_variances(observed, level, length) for level in raw_tree.levels
            }
        else:
            sigma_sq = sigma_hat_first_difference(observed)
            variances = {
                level: np.full(len(block_partition(level, length)), sigma_sq)
                for level in raw_tree.levels
            }
        if self.config.threshold_override is not None:
            thresholds = {
                level: np.full(v.size, self.config.threshold_override)
                for level, v in variances.items()
            }
        else:
            thresholds = {level: factor * v / n for level, v in variances.items()}
        masks = block_mask(raw_tree, thresholds, length)
        all_variances = np.concatenate(list(variances.values()) or [np.zeros(1)])
        all_thresholds = np.concatenate(list(thresholds.values()) or [np.zeros(1)])
        return self._finish(
            Method.BLOCK,
            raw_tree,
            masks,
            float(np.mean(all_thresholds)),
            (raw_tree.coarse_level, raw_tree.finest_level),
            float(np.mean(all_variances)),
        )


def denoise(
    observed: SignalUnionType, basis: WaveletBasis, config: Optional[DenoiseConfig] = None
) -> DenoiseResult:
    """Functional form of :meth:`WaveletDenoiser.denoise`"""
    return WaveletDenoiser(basis, config).denoise(observed)
