"""Monte Carlo risk experiments and empirical convergence rates"""
from .coefficients import CoefficientRiskProfile, coefficient_risk_profile
from .rates import RateReport, empirical_rate, fit_rates, rate_covariate, rate_target
from .risk import (
    ExperimentConfig,
    RiskReport,
    combine_summaries,
    ReplicateFits,
    mse,
    replicate_fits,
    resolve_threads,
    run_risk_experiment,
)
