"""Empirical convergence rates from log-log regressions of the risk"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy import stats

from nsdwav.errors import ConfigError
from nsdwav.estimators import Method
from nsdwav.results import WaveletResults

from .risk import ExperimentConfig, RiskReport, run_risk_experiment

MIN_RATE_POINTS = 4

RATE_COLUMNS = [
    "method",
    "covariate",
    "slope",
    "intercept",
    "std_error",
    "target",
    "points",
    "note",
]


def rate_target(s: float) -> float:
    """Theoretical risk exponent ``-2s / (2s + 1)``"""
    return -1.0 if math.isinf(s) else -2.0 * s / (2.0 * s + 1.0)


def rate_covariate(method: Method, n: np.ndarray) -> np.ndarray:
    """``log(n / log n)`` for term-by-term, ``log n`` for block thresholding"""
    n = np.asarray(n, dtype=float)
    if Method(method) is Method.TERM_BY_TERM:
        return np.log(n / np.log(n))
    return np.log(n)


def _covariate_name(method: Method) -> str:
    return "log(n/log n)" if method is Method.TERM_BY_TERM else "log n"


def _besov_note(config: ExperimentConfig, method: Method) -> str:
    if config.besov is None or method is not Method.BLOCK:
        return ""
    p = config.besov[0]
    if p >= 2:
        return ""
    s = config.denoise.smoothness_s
    power = (2.0 - p) / (p * (1.0 + 2.0 * s))
    return f"risk carries an extra (log n)^{power:.4g} factor for p = {p:g}; slope untested"


@dataclass(frozen=True)
class RateReport(WaveletResults):
    """Per-method least-squares slope of ``log(mean MSE)`` against the rate covariate"""

    risk: RiskReport
    table: pd.DataFrame

    def as_dataframe(self) -> pd.DataFrame:
        return self.table

    def slope(self, method) -> float:
        """Fitted slope of one method"""
        rows = self.table[self.table["method"] == Method(method).value]
        return float(rows["slope"].iloc[0])


def fit_rates(report: RiskReport) -> RateReport:
    """Fit the rate regression of every method in an existing risk report.

    Raises
    ------
    ConfigError
        If fewer than 4 strictly increasing sample sizes were run.
    """
    config = report.config
    n_values = np.asarray(config.n_values)
    if n_values.size < MIN_RATE_POINTS:
        raise ConfigError(
            f"needs at least {MIN_RATE_POINTS} sample sizes, got {n_values.size}",
            field="n_values",
        )
    if np.any(np.diff(n_values) <= 0):
        raise ConfigError("must be strictly increasing", field="n_values")
    summary = report.summary()
    rows = []
    for method in config.methods:
        cells = summary[summary["method"] == method.value].set_index("n")
        risk = cells.loc[n_values, "mean_mse"].to_numpy()
        fit = stats.linregress(rate_covariate(method, n_values), np.log(risk))
        logging.debug("%s slope %.4f +- %.4f", method.value, fit.slope, fit.stderr)
        rows.append(
            {
                "method": method.value,
                "covariate": _covariate_name(method),
                "slope": float(fit.slope),
                "intercept": float(fit.intercept),
                "std_error": float(fit.stderr),
                "target": rate_target(config.denoise.smoothness_s),
                "points": int(n_values.size),
                "note": _besov_note(config, method),
            }
        )
    return RateReport(report, pd.DataFrame(rows, columns=RATE_COLUMNS))


def empirical_rate(
    config: ExperimentConfig, threads: Optional[int] = None
) -> RateReport:
    """Run ``config`` and fit the convergence rate of each method.

    Block thresholding regresses ``log(mean MSE)`` on ``log n`` and term-by-term
    thresholding on ``log(n / log n)``, so both slopes estimate ``-2s / (2s + 1)``.

    Parameters
    ----------
    config: ExperimentConfig
        An experiment with at least 4 strictly increasing sample sizes.
    threads: Optional[int]
        joblib workers, ``NSDWAV_THREADS`` when ``None``.

    Returns
    -------
    :class:`RateReport`
        Slope, intercept and slope standard error per method, with the theoretical
        target alongside.
    """
    return fit_rates(run_risk_experiment(config, threads))
