"""Visualizations.risk module"""
# pylint: disable = too-few-public-methods
import matplotlib as mpl
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from nsdwav.estimators import Method
from nsdwav.experiments import RateReport, RiskReport, rate_covariate
from nsdwav.utils._visualisation import DEFAULT_RC_PARAMS as drcp, METHOD_COLOURS
from nsdwav.visualizations.visualization_results import VisualizationResults


def _covariate_label(report: RiskReport, fitted: bool) -> str:
    methods = set(report.config.methods)
    if not fitted or methods == {Method.BLOCK}:
        return "log n"
    if methods == {Method.TERM_BY_TERM}:
        return "log(n/log n)"
    return "log n (block), log(n/log n) (term-by-term)"


class RiskViz(VisualizationResults):
    """Mean MSE against ``n`` per method on log-log axes, with 2-standard-error bars.

    For a :class:`RateReport` the fitted regression lines are drawn against each
    method's covariate instead.
    """

    def _matplotlib_plot(self, results, block=True, call_show=True) -> Figure:
        rates = results if isinstance(results, RateReport) else None
        report: RiskReport = rates.risk if rates is not None else results
        summary = report.summary()
        with mpl.rc_context(drcp):
            fig, axis = plt.subplots(figsize=(8, 5))
            for method in report.config.methods:
                cells = summary[summary["method"] == method.value]
                n = cells["n"].to_numpy()
                mean = cells["mean_mse"].to_numpy()
                replicates = cells["replicates"].to_numpy()
                half_width = 2.0 * cells["sd_mse"].to_numpy() / np.sqrt(replicates)
                x = rate_covariate(method, n) if rates is not None else np.log(n)
                colour = METHOD_COLOURS[method.value]
                axis.errorbar(
                    x,
                    np.log(mean),
                    yerr=half_width / mean,
                    fmt="o",
                    color=colour,
                    label=method.value,
                )
                if rates is not None:
                    row = rates.table[rates.table["method"] == method.value].iloc[0]
                    axis.plot(
                        x,
                        row["intercept"] + row["slope"] * x,
                        color=colour,
                        label=f"{method.value} slope {row['slope']:.3f} "
                        f"(target {row['target']:.3f})",
                    )
            axis.set_xlabel(_covariate_label(report, rates is not None))
            axis.set_ylabel("log mean MSE")
            axis.set_title(f"{report.config.signal_name}: risk against sample size")
            axis.legend()
            if call_show:
                plt.show(block=block)
            return fig
