"""Visualizations.denoise module"""
# pylint: disable = too-few-public-methods, too-many-arguments
from typing import Optional, Sequence

import matplotlib as mpl
import matplotlib.pyplot as plt
import pandas as pd
from matplotlib.figure import Figure

from nsdwav.estimators import DenoiseResult, Method
from nsdwav.experiments import ReplicateFits
from nsdwav.model import Signal, SignalKind
from nsdwav.utils.data_conversions import signal_convert
from nsdwav.utils._visualisation import (
    DEFAULT_RC_PARAMS as drcp,
    DEFAULT_STYLE as ds,
    METHOD_COLOURS,
)
from nsdwav.visualizations.visualization_results import VisualizationResults

METHOD_LABELS = {Method.TERM_BY_TERM: "term-by-term", Method.BLOCK: "block"}


def _plot_signal(axis, signal: Signal, colour: str, label: str, **kwargs):
    axis.plot(signal.design_points, signal.samples, color=colour, label=label, **kwargs)


class DenoiseViz(VisualizationResults):
    """Fitted curve of a :class:`DenoiseResult` over the observations and truth"""

    def __init__(self, observed: Optional[Signal] = None, truth: Optional[Signal] = None):
        self.observed = None if observed is None else signal_convert(observed)
        self.truth = None if truth is None else signal_convert(truth, SignalKind.TRUTH)

    def _matplotlib_plot(self, results: DenoiseResult, block=True, call_show=True) -> Figure:
        with mpl.rc_context(drcp):
            fig, axis = plt.subplots(figsize=(10, 4))
            if self.observed is not None:
                _plot_signal(axis, self.observed, ds["observed_colour"], "observed", lw=0.6)
            if self.truth is not None:
                _plot_signal(axis, self.truth, ds["truth_colour"], "truth", lw=1.0)
            _plot_signal(
                axis,
                results.fitted,
                METHOD_COLOURS[results.method.value],
                METHOD_LABELS[results.method],
                lw=1.4,
            )
            axis.set_title(
                f"{METHOD_LABELS[results.method]} thresholding: kept "
                f"{results.kept_detail_count} of {results.raw_tree.detail_count} coefficients"
            )
            axis.set_xlabel("x")
            axis.legend()
            if call_show:
                plt.show(block=block)
            return fig


class ComparisonViz:
    """Noisy data, both reconstructions and the mean MSE per method, one row per signal.

    Columns are: observations over the truth, the term-by-term fit, the block fit and a
    bar chart of the mean MSE from the risk summary.
    """

    def figure(self, panels: Sequence[tuple], summary: pd.DataFrame) -> Figure:
        """
        Parameters
        ----------
        panels: Sequence[Tuple[str, ReplicateFits]]
            ``(signal name, fits)`` for each row.
        summary: pandas.DataFrame
            Risk summary with ``signal``, ``method`` and ``mean_mse`` columns.
        """
        with mpl.rc_context(drcp):
            fig, axes = plt.subplots(
                len(panels), 4, figsize=(16, 3.2 * len(panels)), squeeze=False
            )
            for row, (name, fits) in zip(axes, panels):
                self._signal_row(row, name, fits, summary[summary["signal"] == name])
            fig.tight_layout()
            return fig

    @staticmethod
    def _signal_row(axes, name: str, fits: ReplicateFits, summary: pd.DataFrame):
        noisy_axis, *fit_axes, bar_axis = axes
        _plot_signal(noisy_axis, fits.observed, ds["observed_colour"], "observed", lw=0.6)
        _plot_signal(noisy_axis, fits.truth, ds["truth_colour"], "truth", lw=1.0)
        noisy_axis.set_title(f"{name} with noise (n = {fits.truth.n})", fontsize="small")
        for axis, method in zip(fit_axes, (Method.TERM_BY_TERM, Method.BLOCK)):
            axis.set_title(f"{name}: {METHOD_LABELS[method]}", fontsize="small")
            if method not in fits.results:
                axis.set_axis_off()
                continue
            _plot_signal(axis, fits.truth, ds["truth_colour"], "truth", lw=0.8)
            _plot_signal(
                axis,
                fits.results[method].fitted,
                METHOD_COLOURS[method.value],
                METHOD_LABELS[method],
                lw=1.2,
            )
        means = summary.groupby("method", sort=False)["mean_mse"].mean()
        bar_axis.bar(
            list(means.index),
            means.to_numpy(),
            color=[METHOD_COLOURS.get(m, ds["neutral_primary_colour"]) for m in means.index],
        )
        bar_axis.set_title(f"{name}: mean MSE", fontsize="small")
