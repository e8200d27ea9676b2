"""Monte Carlo risk experiments"""
# pylint: disable = too-many-instance-attributes, too-many-locals, invalid-name
import logging
import math
import os
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from nsdwav.errors import ConfigError, InvariantViolation
from nsdwav.estimators import DenoiseConfig, DenoiseResult, Method, WaveletDenoiser
from nsdwav.model import Signal, SignalKind, log2_length
from nsdwav.noise import NoiseModel, NsdPairMixture
from nsdwav.results import WaveletResults
from nsdwav.signals import TestFunction, calibrate_snr, sample, test_function
from nsdwav.utils.data_conversions import SignalUnionType, paired_samples
from nsdwav.utils.rng import derive_seed
from nsdwav.wavelets import WaveletBasis, basis_from_name

THREADS_ENV = "NSDWAV_THREADS"

SUMMARY_COLUMNS = [
    "signal",
    "method",
    "n",
    "mean_mse",
    "sd_mse",
    "replicates",
    "seed",
    "mean_threshold",
    "mean_sigma_hat",
]


def resolve_threads(value: Optional[Union[str, int]] = None) -> int:
    """joblib ``n_jobs`` from ``value`` or the ``NSDWAV_THREADS`` environment variable.

    Unset means 1 worker, ``0`` means one per CPU.
    """
    if value is None:
        value = os.getenv(THREADS_ENV, "1")
    try:
        threads = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {value!r}") from exc
    if threads < 0:
        raise ConfigError(f"{THREADS_ENV} must be non-negative, got {threads}")
    return -1 if threads == 0 else threads


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo risk experiment.

    Parameters
    ----------
    signal: TestFunction
        The truth, fixed across replicates; a name is looked up with
        :func:`~nsdwav.signals.test_function`.
    n_values: Tuple[int]
        Sample sizes, powers of two of at least twice the filter length.
    snr: float
        (default= `4.0`) ``sd(truth) / sd(noise)``; ``inf`` gives noise-free data.
    noise: NoiseModel
        (default= ``NsdPairMixture()``) Noise law, rescaled to ``sigma`` per replicate.
    methods: Tuple[Method]
        (default= both) Estimators to compare.
    denoise: DenoiseConfig
        (default= ``DenoiseConfig()``) Estimator settings; ``method`` is overridden.
    replicates: int
        (default= `100`) Noise replicates per sample size.
    master_seed: int
        (default= `0`) Replicate ``r`` draws its noise from ``derive_seed(master_seed, r)``.
    wavelet: str
        (default= `"coif3"`) Basis name, ``haar``, ``dbK`` or ``coifK``.
    besov: Optional[Tuple[float, float, float]]
        (default= `None`) ``(p, q, M)`` of the assumed Besov ball, echoed into reports.
    """

    signal: TestFunction
    n_values: Tuple[int, ...] = (1024,)
    snr: float = 4.0
    noise: NoiseModel = field(default_factory=NsdPairMixture)
    methods: Tuple[Method, ...] = (Method.TERM_BY_TERM, Method.BLOCK)
    denoise: DenoiseConfig = field(default_factory=DenoiseConfig)
    replicates: int = 100
    master_seed: int = 0
    wavelet: str = "coif3"
    besov: Optional[Tuple[float, float, float]] = None

    def __post_init__(self):
        if not isinstance(self.signal, TestFunction):
            object.__setattr__(self, "signal", test_function(self.signal))
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        if self.replicates < 1:
            raise ConfigError(f"must be at least 1, got {self.replicates}", field="replicates")
        if not self.n_values:
            raise ConfigError("needs at least one sample size", field="n_values")
        if not self.methods:
            raise ConfigError("needs at least one method", field="methods")
        if not self.snr > 0:
            raise ConfigError(f"must be positive, got {self.snr}", field="snr")
        if self.besov is not None:
            object.__setattr__(self, "besov", tuple(float(b) for b in self.besov))
            if len(self.besov) != 3 or self.besov[0] < 1:
                raise ConfigError("expects (p, q, M) with p >= 1", field="besov")
        minimum = 2 * self.basis.length
        for n in self.n_values:
            try:
                log2_length(n)
            except ValueError as exc:
                raise ConfigError(str(exc), field="n_values") from exc
            if n < minimum:
                raise ConfigError(
                    f"n = {n} is below twice the {self.wavelet} filter length ({minimum})",
                    field="n_values",
                )

    @property
    def basis(self) -> WaveletBasis:
        """The wavelet basis named by ``wavelet``"""
        return basis_from_name(self.wavelet)

    @property
    def signal_name(self) -> str:
        """Name of the test function"""
        return self.signal.name.value

    def with_signal(self, signal) -> "ExperimentConfig":
        """A copy for another test function"""
        return replace(self, signal=signal)

    def echo(self) -> dict:
        """Flat, JSON-ready description with every default materialized"""
        noise = {"model": type(self.noise).__name__, **asdict(self.noise)}
        denoise = {
            key: (value.value if hasattr(value, "value") else value)
            for key, value in asdict(self.denoise).items()
        }
        return {
            "signal": self.signal_name,
            "n_values": list(self.n_values),
            "snr": self.snr,
            "noise": noise,
            "methods": [m.value for m in self.methods],
            "denoise": denoise,
            "replicates": self.replicates,
            "master_seed": self.master_seed,
            "wavelet": self.wavelet,
            "besov": list(self.besov) if self.besov else None,
        }


def mse(fitted: SignalUnionType, truth: SignalUnionType) -> float:
    """Grid average ``n^{-1} sum (fitted_m - truth_m)^2``

    Raises
    ------
    LengthMismatch
        If the two signals have different lengths.
    """
    fitted, truth = paired_samples(fitted, truth)
    return float(np.mean((fitted - truth) ** 2))


def _noise_scale(truth: Signal, snr: float) -> float:
    return 0.0 if math.isinf(snr) else calibrate_snr(truth, snr)


@dataclass(frozen=True)
class ReplicateFits:
    """Truth, observations and every method's fit for one replicate"""

    truth: Signal
    observed: Signal
    seed: int
    results: Dict[Method, DenoiseResult]


def _fit_replicate(
    config: ExperimentConfig, truth: Signal, sigma: float, replicate: int
) -> ReplicateFits:
    seed = derive_seed(config.master_seed, replicate)
    noise = config.noise.generate(truth.n, seed)
    noise = noise * (sigma / math.sqrt(config.noise.population_sigma_sq))
    observed = Signal(truth.samples + noise, SignalKind.OBSERVED)
    basis = config.basis
    results = {
        method: WaveletDenoiser(basis, config.denoise.with_method(method)).denoise(observed)
        for method in config.methods
    }
    return ReplicateFits(truth, observed, seed, results)


def replicate_fits(config: ExperimentConfig, n: int, replicate: int = 0) -> ReplicateFits:
    """Recompute one replicate of ``config`` at sample size ``n``"""
    truth = sample(config.signal, n)
    return _fit_replicate(config, truth, _noise_scale(truth, config.snr), replicate)


def _run_replicate(config: ExperimentConfig, truth: Signal, sigma: float, replicate: int):
    fits = _fit_replicate(config, truth, sigma, replicate)
    return [
        {
            "signal": config.signal_name,
            "method": method.value,
            "n": truth.n,
            "replicate": replicate,
            "seed": fits.seed,
            "mse": mse(result.fitted, truth),
            "threshold": result.threshold_used,
            "sigma_hat": result.sigma_hat,
            "kept": result.kept_detail_count,
        }
        for method, result in fits.results.items()
    ]


@dataclass(frozen=True)
class RiskReport(WaveletResults):
    """Replicate-level MSEs of one experiment and their per ``(method, n)`` summary"""

    config: ExperimentConfig
    replicate_frame: pd.DataFrame

    def summary(self) -> pd.DataFrame:
        """
        Returns
        -------
        pandas.DataFrame
            One row per ``(method, n)`` in configuration order with the columns:

            * ``signal``, ``method``, ``n``
            * ``mean_mse``: Mean MSE over replicates.
            * ``sd_mse``: Sample standard deviation of the MSE (0 for one replicate).
            * ``replicates``: Replicate count.
            * ``seed``: The master seed.
            * ``mean_threshold``: Mean ``lambda0`` or mean ``lambda^2``.
            * ``mean_sigma_hat``: Mean noise-variance estimate.
        """
        rows = []
        frame = self.replicate_frame
        for n in self.config.n_values:
            for method in self.config.methods:
                group = frame[(frame["n"] == n) & (frame["method"] == method.value)]
                group = group.sort_values("replicate")
                errors = group["mse"].to_numpy()
                rows.append(
                    {
                        "signal": self.config.signal_name,
                        "method": method.value,
                        "n": n,
                        "mean_mse": float(np.mean(errors)),
                        "sd_mse": float(np.std(errors, ddof=1)) if errors.size > 1 else 0.0,
                        "replicates": int(errors.size),
                        "seed": self.config.master_seed,
                        "mean_threshold": float(np.mean(group["threshold"].to_numpy())),
                        "mean_sigma_hat": float(np.mean(group["sigma_hat"].to_numpy())),
                    }
                )
        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def as_dataframe(self) -> pd.DataFrame:
        return self.summary()

    def mean_mse(self, method: Union[Method, str], n: int) -> float:
        """Mean MSE of one cell"""
        summary = self.summary()
        cell = summary[(summary["method"] == Method(method).value) & (summary["n"] == n)]
        return float(cell["mean_mse"].iloc[0])

    def replicate_mse(self, method: Union[Method, str], n: int) -> np.ndarray:
        """Per-replicate MSEs of one cell, in replicate order"""
        frame = self.replicate_frame
        cell = frame[(frame["method"] == Method(method).value) & (frame["n"] == n)]
        return cell.sort_values("replicate")["mse"].to_numpy()


def run_risk_experiment(
    config: ExperimentConfig, threads: Optional[int] = None
) -> RiskReport:
    """Run every replicate of ``config`` and collect the MSEs.

    For each ``n`` the truth is sampled once and ``sigma`` calibrated from the SNR; each
    replicate adds rescaled noise and runs every configured method. Replicates execute on
    ``threads`` joblib workers (``NSDWAV_THREADS`` when ``None``); the report does not
    depend on the worker count.
    """
    n_jobs = resolve_threads(threads)
    rows: List[dict] = []
    for n in config.n_values:
        truth = sample(config.signal, n)
        sigma = _noise_scale(truth, config.snr)
        logging.debug(
            "%s n=%d sigma=%.6g, %d replicates on %d jobs",
            config.signal_name,
            n,
            sigma,
            config.replicates,
            n_jobs,
        )
        per_replicate = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_run_replicate)(config, truth, sigma, r) for r in range(config.replicates)
        )
        for replicate_rows in per_replicate:
            rows.extend(replicate_rows)
    frame = pd.DataFrame(rows)
    if not np.all(np.isfinite(frame["mse"].to_numpy())):
        raise InvariantViolation("Non-finite MSE in risk experiment")
    return RiskReport(config, frame)


def combine_summaries(reports: Sequence[RiskReport]) -> pd.DataFrame:
    """Stack the summaries of several reports"""
    return pd.concat([r.summary() for r in reports], ignore_index=True)
