"""Monte Carlo checks of negative super-additive dependence"""
# pylint: disable = invalid-name, too-many-arguments, too-many-locals
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Union

import numpy as np
import pandas as pd

from nsdwav.errors import InsufficientLength, LengthMismatch
from nsdwav.results import PassFailResults, WaveletResults
from nsdwav.utils.rng import derive_seed, philox_stream

from .models import NoiseModel, _PairNoise, generate_batch, iter_batches

Z_TOLERANCE = 3.0
MIN_SUPERMODULAR_REPLICATES = 10_000
COV_DECAY_REPLICATES = 2000


def _pairs(x: np.ndarray):
    even = x.shape[-1] // 2 * 2
    return x[..., 0:even:2], x[..., 1:even:2]


def pair_floor_product(x: np.ndarray) -> np.ndarray:
    """Mean over pairs of ``max(x_{2t-1}, 0.1) max(x_{2t}, 0.1)``"""
    first, second = _pairs(x)
    return np.mean(np.maximum(first, 0.1) * np.maximum(second, 0.1), axis=-1)


def exp_mean(x: np.ndarray) -> np.ndarray:
    """``exp(n^{-1} sum x_m)`` with inputs clipped to ``[-5, 5]``"""
    return np.exp(np.mean(np.clip(x, -5.0, 5.0), axis=-1))


def pair_product(x: np.ndarray) -> np.ndarray:
    """Mean over pairs of ``x_{2t-1} x_{2t}``"""
    first, second = _pairs(x)
    return np.mean(first * second, axis=-1)


# super-additive test functions, each mapping rows of shape (..., n) to (...)
SUPERADDITIVE_BATTERY: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "pair_floor_product": pair_floor_product,
    "exp_mean": exp_mean,
    "pair_product": pair_product,
}

BatteryFunction = Union[str, Callable[[np.ndarray], np.ndarray]]


def _battery_function(phi: BatteryFunction):
    if callable(phi):
        return getattr(phi, "__name__", "phi"), phi
    if phi not in SUPERADDITIVE_BATTERY:
        raise ValueError(
            f"Unknown test function {phi!r}, choose from {list(SUPERADDITIVE_BATTERY)}"
        )
    return phi, SUPERADDITIVE_BATTERY[phi]


@dataclass
class CheckReport(PassFailResults):
    """Pass/fail records of noise checks.

    Every record holds ``check``, ``detail``, ``estimate``, ``reference``,
    ``difference``, ``std_error`` and ``passed``.
    """

    records: List[dict] = field(default_factory=list)

    def add(
        self,
        check: str,
        detail: str,
        estimate: float,
        reference: float,
        std_error: float,
        passed: bool,
    ):
        """Append one record"""
        self.records.append(
            {
                "check": check,
                "detail": detail,
                "estimate": float(estimate),
                "reference": float(reference),
                "difference": float(estimate - reference),
                "std_error": float(std_error),
                "passed": bool(passed),
            }
        )
        logging.debug("%s %s: %s", check, detail, "pass" if passed else "FAIL")

    def extend(self, other: "CheckReport") -> "CheckReport":
        """Append the records of another report"""
        self.records.extend(other.records)
        return self

    @property
    def all_passed(self) -> bool:
        return all(record["passed"] for record in self.records)

    def as_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            self.records,
            columns=[
                "check",
                "detail",
                "estimate",
                "reference",
                "difference",
                "std_error",
                "passed",
            ],
        )


@dataclass(frozen=True)
class CovDecayProfile(WaveletResults):
    """Estimated covariance tail ``v(u)`` for ``u = 1..u_max``"""

    lags: np.ndarray
    v_hat: np.ndarray
    std_error: np.ndarray
    reference: np.ndarray

    def as_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "u": self.lags,
                "v_hat": self.v_hat,
                "std_error": self.std_error,
                "reference": self.reference,
            }
        )

    def to_report(self) -> CheckReport:
        """One record per lag, passing when ``v_hat`` is within 3 standard errors of
        the population tail"""
        report = CheckReport()
        for u, v_hat, se, ref in zip(self.lags, self.v_hat, self.std_error, self.reference):
            report.add(
                "cov_decay",
                f"u={u}",
                v_hat,
                ref,
                se,
                abs(v_hat - ref) <= Z_TOLERANCE * se,
            )
        return report


def _parity_lag_means(batch: np.ndarray) -> np.ndarray:
    """Per replicate, the mean of ``x_k x_{k+h}`` over ``k`` of each parity.

    Returns shape ``(replicates, n // 2, 2)`` indexed by ``(r, h - 1, k mod 2)``.
    """
    _, n = batch.shape
    size = 2 * n
    spectrum = np.fft.rfft(batch, size, axis=1)
    lags = np.arange(1, n // 2 + 1)
    means = np.empty((batch.shape[0], lags.size, 2))
    for parity in (0, 1):
        masked = np.zeros_like(batch)
        masked[:, parity::2] = batch[:, parity::2]
        # sum_k masked_k x_{k+h}
        correlation = np.fft.irfft(
            np.conj(np.fft.rfft(masked, size, axis=1)) * spectrum, size, axis=1
        )
        counts = np.maximum(np.ceil((n - lags - parity) / 2.0), 1.0)
        means[:, :, parity] = correlation[:, lags] / counts
    return means


def cov_decay_profile(
    model: NoiseModel, u_max: int, n: int, replicates: int, seed: int
) -> CovDecayProfile:
    """Estimate ``v(u) = sum_{|k-m| >= u} |Cov(eps_k, eps_m)|`` averaged over ``k``.

    Lag covariances are pooled over indices of equal parity and over replicates, for lags
    ``1..n/2``. The absolute value is cross-fitted: half of the replicates pick the sign,
    the other half supply the magnitude, so lags with zero covariance contribute no bias.

    Parameters
    ----------
    model: NoiseModel
        The noise law.
    u_max: int
        Largest tail start, at least 1.
    n: int
        Sequence length, at least ``2 u_max``.
    replicates: int
        Number of sequences, at least 4.
    seed: int
        Master seed.

    Raises
    ------
    InsufficientLength
        If ``n < 2 u_max`` or ``u_max < 1``.
    """
    if u_max < 1 or n < 2 * u_max:
        raise InsufficientLength(
            f"Lags up to u_max = {u_max} need n >= {2 * max(u_max, 1)}, got n = {n}"
        )
    if replicates < 4:
        raise ValueError(f"The covariance profile needs at least 4 replicates, got {replicates}")
    batch = generate_batch(model, n, replicates, seed)
    means = _parity_lag_means(batch)
    sign_half, value_half = means[0::2], means[1::2]
    signs = np.sign(sign_half.mean(axis=0))
    values = value_half.mean(axis=0)
    variances = value_half.var(axis=0, ddof=1) / value_half.shape[0]
    terms = np.sum(signs * values, axis=1)
    term_variances = np.sum(variances, axis=1)
    # tails: sum over lags h >= u
    tails = np.cumsum(terms[::-1])[::-1]
    tail_variances = np.cumsum(term_variances[::-1])[::-1]
    lags = np.arange(1, u_max + 1)
    return CovDecayProfile(
        lags=lags,
        v_hat=tails[lags - 1],
        std_error=np.sqrt(tail_variances[lags - 1]),
        reference=np.array([model.covariance_tail(u) for u in lags]),
    )


def _mean_and_variance(model, n, replicates, seed, functions):
    values = {name: [] for name in functions}
    for batch in iter_batches(model, n, replicates, seed):
        for name, phi in functions.items():
            values[name].append(phi(batch))
    stacked = {name: np.concatenate(v) for name, v in values.items()}
    return {name: (float(np.mean(v)), float(np.var(v, ddof=1))) for name, v in stacked.items()}


def supermodular_check(
    model: NoiseModel,
    n: int,
    replicates: int,
    seed: int,
    battery: Sequence[BatteryFunction] = tuple(SUPERADDITIVE_BATTERY),
) -> CheckReport:
    """Compare ``E phi(X)`` with ``E phi(X*)`` for every super-additive test function.

    ``X`` follows ``model`` (streams from ``derive_seed(seed, 0)``) and ``X*`` its
    independent copy (streams from ``derive_seed(seed, 1)``). A function passes when
    ``E phi(X) - E phi(X*) <= 3`` standard errors.

    Parameters
    ----------
    model: NoiseModel
        The dependent law under test.
    n: int
        Sequence length.
    replicates: int
        Monte Carlo replicates per ensemble, at least 10 000.
    seed: int
        Master seed.
    battery: Sequence[Union[str, Callable]]
        Test functions, by name from :data:`SUPERADDITIVE_BATTERY` or as callables.

    Returns
    -------
    :class:`CheckReport`
        ``estimate`` is ``E phi(X)``, ``reference`` is ``E phi(X*)``.
    """
    if replicates < MIN_SUPERMODULAR_REPLICATES:
        raise ValueError(
            f"The supermodular check needs at least {MIN_SUPERMODULAR_REPLICATES} "
            f"replicates, got {replicates}"
        )
    functions = dict(_battery_function(phi) for phi in battery)
    dependent = _mean_and_variance(model, n, replicates, derive_seed(seed, 0), functions)
    independent = _mean_and_variance(
        model.independent_copy(), n, replicates, derive_seed(seed, 1), functions
    )
    report = CheckReport()
    for name in functions:
        mean, var = dependent[name]
        mean_star, var_star = independent[name]
        se = math.sqrt(var / replicates + var_star / replicates)
        report.add(
            "supermodular", name, mean, mean_star, se, mean - mean_star <= Z_TOLERANCE * se
        )
    return report


def superadditivity_check(
    phi: BatteryFunction, dim: int, trials: int, seed: int
) -> CheckReport:
    """Verify ``phi(x v y) + phi(x ^ y) >= phi(x) + phi(y)`` on random pairs.

    ``x`` and ``y`` are independent standard normal vectors of length ``dim``; the
    report's ``estimate`` is the smallest slack over all trials.
    """
    if dim < 2 or trials < 1:
        raise ValueError(f"Need dim >= 2 and trials >= 1, got dim={dim}, trials={trials}")
    name, function = _battery_function(phi)
    stream = philox_stream(derive_seed(seed, 2))
    x = stream.standard_normal((trials, dim))
    y = stream.standard_normal((trials, dim))
    join, meet = np.maximum(x, y), np.minimum(x, y)
    left = function(join) + function(meet)
    right = function(x) + function(y)
    slack = left - right
    tolerance = 1e-12 * float(np.max(np.abs(left)) + 1.0)
    report = CheckReport()
    report.add(
        "superadditive", name, float(np.min(slack)), 0.0, 0.0, np.min(slack) >= -tolerance
    )
    return report


def weighted_variance_check(
    model: NoiseModel, weights: Sequence[float], replicates: int, seed: int
) -> CheckReport:
    """Check ``Var(sum a_m eps_m) <= C0 sigma^2`` with ``C0 = sum a_m^2``.

    ``sigma^2`` is the model's population marginal variance. The check passes when the
    Monte Carlo variance is at most ``C0 sigma^2`` plus 3 standard errors; the record's
    ``reference`` holds the bound and ``detail`` the exact population variance.

    Raises
    ------
    LengthMismatch
        If ``weights`` is empty or has odd length under a pair model.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        raise LengthMismatch("Weights must be a nonempty one-dimensional sequence")
    if isinstance(model, _PairNoise) and weights.size % 2:
        raise LengthMismatch(
            f"Pair noise needs an even number of weights, got {weights.size}"
        )
    if replicates < 2:
        raise ValueError(f"Need at least 2 replicates, got {replicates}")
    sums = np.concatenate(
        [batch @ weights for batch in iter_batches(model, weights.size, replicates, seed)]
    )
    centred_sq = (sums - sums.mean()) ** 2
    estimate = float(centred_sq.mean())
    se = float(centred_sq.std() / math.sqrt(replicates))
    bound = float(np.dot(weights, weights) * model.population_sigma_sq)
    report = CheckReport()
    report.add(
        "weighted_variance",
        f"n={weights.size} exact={model.weighted_variance(weights):.6g}",
        estimate,
        bound,
        se,
        estimate <= bound + Z_TOLERANCE * se,
    )
    return report


def run_noise_checks(
    model: NoiseModel,
    n: int = 1024,
    replicates: int = MIN_SUPERMODULAR_REPLICATES,
    u_max: int = 4,
    seed: int = 0,
) -> CheckReport:
    """Every noise check for one model, as one report.

    Runs the lattice inequality for each battery function, the supermodular comparison,
    the covariance-tail profile for ``u = 1..u_max`` (with at most 2000 replicates) and
    the weighted-variance bound for uniform weights ``n^{-1/2}`` and for the normalized
    indicator of the first ``n / 4`` samples.
    """
    report = CheckReport()
    for index, name in enumerate(SUPERADDITIVE_BATTERY):
        report.extend(superadditivity_check(name, 8, 1000, derive_seed(seed, 10, index)))
    report.extend(supermodular_check(model, n, replicates, derive_seed(seed, 11)))
    report.extend(
        cov_decay_profile(
            model, u_max, n, min(replicates, COV_DECAY_REPLICATES), derive_seed(seed, 12)
        ).to_report()
    )
    uniform = np.full(n, 1.0 / math.sqrt(n))
    quarter = max(1, n // 4)
    indicator = np.zeros(n)
    indicator[:quarter] = 1.0 / math.sqrt(quarter)
    for index, weights in enumerate((uniform, indicator)):
        report.extend(
            weighted_variance_check(model, weights, replicates, derive_seed(seed, 13, index))
        )
    return report
