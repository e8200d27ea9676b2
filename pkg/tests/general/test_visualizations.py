# pylint: disable=import-error, wrong-import-position, wrong-import-order, invalid-name
"""Plotting test suite"""
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pytest
from matplotlib.figure import Figure

from common import *

from nsdwav.estimators import DenoiseConfig, Method, WaveletDenoiser
from nsdwav.experiments import (
    ExperimentConfig,
    fit_rates,
    replicate_fits,
    run_risk_experiment,
)
from nsdwav.signals import sample, test_function
from nsdwav.visualizations import comparison_figure, get_viz, plot, save_svg
from nsdwav.visualizations.denoise import DenoiseViz
from nsdwav.visualizations.risk import RiskViz
from nsdwav.wavelets import basis_from_name


def denoised_spikes(method=Method.BLOCK):
    """Truth, observations and the denoising result for spikes at n = 256"""
    truth = sample(test_function("spikes"), 256)
    observed = truth.with_samples(
        truth.samples + random_samples(256, seed=4), SignalKind.OBSERVED
    )
    config = DenoiseConfig(method=method, block_threshold_factor=4.50524)
    denoiser = WaveletDenoiser(basis_from_name("db4"), config)
    return truth, observed, denoiser.denoise(observed)


def small_report():
    """A four-size risk report for the rate plots"""
    config = ExperimentConfig(
        signal="corner", n_values=(32, 64, 128, 256), wavelet="db2", replicates=3
    )
    return run_risk_experiment(config, threads=1)


def test_denoise_plot():
    """A denoising result plots onto one axis with a legend"""
    truth, observed, result = denoised_spikes()
    fig = plot(result, observed=observed, truth=truth, call_show=False)
    assert isinstance(fig, Figure)
    axis = fig.axes[0]
    assert len(axis.get_lines()) == 3
    assert "block thresholding" in axis.get_title()
    plt.close(fig)


def test_result_plot_method():
    """DenoiseResult.plot draws the fit alone when no data is given"""
    _, _, result = denoised_spikes(Method.TERM_BY_TERM)
    fig = result.plot(call_show=False)
    assert len(fig.axes[0].get_lines()) == 1
    plt.close(fig)


def test_risk_and_rate_plots():
    """Risk reports and rate reports share the risk visualization"""
    report = small_report()
    assert isinstance(get_viz(report), RiskViz)
    fig = plot(report, call_show=False)
    assert fig.axes[0].get_xlabel() == "log n"
    plt.close(fig)
    rates = fit_rates(report)
    fig = plot(rates, call_show=False)
    assert len(fig.axes[0].get_lines()) >= 2
    assert "log(n/log n)" in fig.axes[0].get_xlabel()
    plt.close(fig)


def test_comparison_figure(tmp_path):
    """Four panels per signal, written as deterministic SVG"""
    report = small_report()
    panels = [("corner", replicate_fits(report.config, 64))]
    fig = comparison_figure(panels, report.summary())
    assert len(fig.axes) == 4
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    save_svg(fig, first)
    save_svg(fig, second)
    plt.close(fig)
    assert first.read_bytes() == second.read_bytes()
    assert b"<svg" in first.read_bytes()


def test_get_viz():
    """Denoising results get the denoise visualization, anything else is refused"""
    truth, observed, result = denoised_spikes()
    viz = get_viz(result, observed.samples, truth)
    assert isinstance(viz, DenoiseViz)
    assert viz.observed.kind is SignalKind.OBSERVED
    with pytest.raises(ValueError):
        get_viz(pd.DataFrame())


@pytest.mark.block_plots
def test_denoise_plot_blocking():
    """Show the plot and wait for it to be closed"""
    truth, observed, result = denoised_spikes()
    plot(result, observed=observed, truth=truth, block=True)
