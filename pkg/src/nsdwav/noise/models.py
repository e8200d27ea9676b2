"""Noise models: i.i.d. Gaussian and negatively correlated Gaussian pairs"""
# pylint: disable = invalid-name
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from nsdwav.errors import ConfigError, InvalidRho, OddLengthForPairModel
from nsdwav.utils.rng import derive_seed, open_uniforms, philox_stream

BATCH_CHUNK = 4096


class NoiseModel(ABC):
    """A zero-mean noise sequence ``eps_1, ..., eps_n`` drawn from a seeded stream.

    Every model consumes the standard normals ``z_m = Phi^{-1}(u_m)`` of one Philox
    stream in order, so the output depends only on ``(model, n, seed)``.
    """

    @property
    @abstractmethod
    def population_sigma_sq(self) -> float:
        """Average marginal variance ``n^{-1} sum Var(eps_m)``"""

    @abstractmethod
    def _from_normals(self, normals: np.ndarray) -> np.ndarray:
        """Map standard normals of shape ``(..., n)`` onto noise of the same shape"""

    @abstractmethod
    def independent_copy(self) -> "NoiseModel":
        """The model with the same marginals and no dependence"""

    @abstractmethod
    def covariance_tail(self, u: int) -> float:
        """Population ``v(u)``: sum of ``|Cov(eps_k, eps_m)|`` over ``|k - m| >= u``,
        averaged over ``k``"""

    @abstractmethod
    def weighted_variance(self, weights: np.ndarray) -> float:
        """Population ``Var(sum a_m eps_m)``"""

    def check_length(self, n: int):
        """Raise if ``n`` samples cannot be generated"""
        if n < 1:
            raise ValueError(f"Noise length must be positive, got {n}")

    def generate(self, n: int, seed: int) -> np.ndarray:
        """``n`` noise values, bit-identical for equal ``(model, n, seed)``"""
        self.check_length(n)
        normals = ndtri(open_uniforms(philox_stream(seed), n))
        return self._from_normals(normals)


@dataclass(frozen=True)
class IidGaussian(NoiseModel):
    """Independent ``N(0, sigma^2)`` noise"""

    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}", field="sigma")

    @property
    def population_sigma_sq(self) -> float:
        return self.sigma**2

    def _from_normals(self, normals):
        return self.sigma * normals

    def independent_copy(self) -> "IidGaussian":
        return self

    def covariance_tail(self, u: int) -> float:
        return 0.0

    def weighted_variance(self, weights) -> float:
        weights = np.asarray(weights, dtype=float)
        return float(self.sigma**2 * np.dot(weights, weights))


class _PairNoise(NoiseModel):
    """Independent bivariate normal pairs ``(eps_{2t-1}, eps_{2t})``.

    Pair ``t`` uses normals ``2t`` and ``2t + 1`` of the stream:
    ``x1 = z1``, ``x2 = rho z1 + sqrt(1 - rho^2) z2``, then each coordinate is scaled
    by its marginal standard deviation unless ``standardize`` is set.
    """

    sigma1_sq: float
    sigma2_sq: float
    standardize: bool

    @property
    def rho(self) -> float:
        """Within-pair correlation"""
        return 0.0

    def _check_variances(self):
        for name in ("sigma1_sq", "sigma2_sq"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"must be positive, got {getattr(self, name)}", field=name)

    @property
    def marginal_sds(self):
        """Standard deviations of the first and second coordinate of a pair"""
        if self.standardize:
            return 1.0, 1.0
        return math.sqrt(self.sigma1_sq), math.sqrt(self.sigma2_sq)

    @property
    def population_sigma_sq(self) -> float:
        sd1, sd2 = self.marginal_sds
        return (sd1**2 + sd2**2) / 2.0

    def check_length(self, n: int):
        super().check_length(n)
        if n % 2:
            raise OddLengthForPairModel(f"Pair noise needs an even length, got {n}")

    def _from_normals(self, normals):
        first = normals[..., 0::2]
        second = self.rho * first + math.sqrt(1.0 - self.rho**2) * normals[..., 1::2]
        sd1, sd2 = self.marginal_sds
        noise = np.empty_like(normals)
        noise[..., 0::2] = sd1 * first
        noise[..., 1::2] = sd2 * second
        return noise

    def independent_copy(self) -> "IndependentPairs":
        return IndependentPairs(self.sigma1_sq, self.sigma2_sq, self.standardize)

    def covariance_tail(self, u: int) -> float:
        sd1, sd2 = self.marginal_sds
        return abs(self.rho) * sd1 * sd2 if u <= 1 else 0.0

    def weighted_variance(self, weights) -> float:
        weights = np.asarray(weights, dtype=float)
        self.check_length(weights.size)
        sd1, sd2 = self.marginal_sds
        first, second = weights[0::2], weights[1::2]
        return float(
            sd1**2 * np.dot(first, first)
            + sd2**2 * np.dot(second, second)
            + 2.0 * self.rho * sd1 * sd2 * np.dot(first, second)
        )


@dataclass(frozen=True)
class IndependentPairs(_PairNoise):
    """Uncorrelated pairs with the marginals of an :class:`NsdPairMixture`"""

    sigma1_sq: float = 1.0
    sigma2_sq: float = 9.0
    standardize: bool = True

    def __post_init__(self):
        self._check_variances()


@dataclass(frozen=True)
class NsdPairMixture(_PairNoise):
    """Negatively correlated Gaussian pairs ``N(0, 0, sigma1^2, sigma2^2, rho0)``.

    Jointly Gaussian pairs with ``rho0 < 0`` are negatively associated, hence negatively
    super-additive dependent; distinct pairs are independent.

    Parameters
    ----------
    rho0: float
        (default= `-0.5`) Within-pair correlation, ``-1 < rho0 < 0``.
    sigma1_sq: float
        (default= `1.0`) Variance of the first coordinate of each pair.
    sigma2_sq: float
        (default= `9.0`) Variance of the second coordinate of each pair.
    standardize: bool
        (default= `True`) Rescale both coordinates to unit variance so the sequence is
        identically distributed.
    """

    rho0: float = -0.5
    sigma1_sq: float = 1.0
    sigma2_sq: float = 9.0
    standardize: bool = True

    def __post_init__(self):
        if not -1.0 < self.rho0 < 0.0:
            raise InvalidRho(
                f"rho0 must satisfy -1 < rho0 < 0 for negative dependence, got {self.rho0}",
                field="rho0",
            )
        self._check_variances()

    @property
    def rho(self) -> float:
        return self.rho0


def generate(model: NoiseModel, n: int, seed: int) -> np.ndarray:
    """Generate ``n`` noise values of ``model`` from ``seed``.

    Parameters
    ----------
    model: NoiseModel
        The noise law.
    n: int
        Sequence length, even for pair models.
    seed: int
        Any integer.

    Returns
    -------
    :class:`numpy.ndarray`
        Deterministic in ``(model, n, seed)``.

    Raises
    ------
    OddLengthForPairModel
        If a pair model is asked for an odd length.
    """
    return model.generate(n, seed)


def generate_batch(
    model: NoiseModel, n: int, replicates: int, seed: int, start: int = 0
) -> np.ndarray:
    """Replicates ``start .. start + replicates - 1`` as rows of one array.

    Row ``r`` equals ``generate(model, n, derive_seed(seed, start + r))``.
    """
    model.check_length(n)
    if replicates < 0:
        raise ValueError(f"Replicate count must be non-negative, got {replicates}")
    batch = np.empty((replicates, n))
    for row in range(replicates):
        batch[row] = model.generate(n, derive_seed(seed, start + row))
    logging.debug("Generated %d replicates of length %d from seed %s", replicates, n, seed)
    return batch


def iter_batches(model: NoiseModel, n: int, replicates: int, seed: int, chunk: int = BATCH_CHUNK):
    """Yield :func:`generate_batch` slices of at most ``chunk`` rows covering all replicates"""
    for start in range(0, replicates, chunk):
        yield generate_batch(model, n, min(chunk, replicates - start), seed, start)
