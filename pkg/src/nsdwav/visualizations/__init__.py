"""Generates visualizations according to result type"""
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib as mpl
import pandas as pd
from matplotlib.figure import Figure

from nsdwav.estimators import DenoiseResult
from nsdwav.experiments import RateReport, RiskReport
from nsdwav.model import Signal
from nsdwav.utils._visualisation import DEFAULT_RC_PARAMS as drcp
from nsdwav.visualizations.denoise import ComparisonViz, DenoiseViz
from nsdwav.visualizations.risk import RiskViz
from nsdwav.visualizations.visualization_results import VisualizationResults


def get_viz(results, observed: Optional[Signal] = None, truth: Optional[Signal] = None):
    """
    Get visualization according to the result type
    """
    if isinstance(results, DenoiseResult):
        return DenoiseViz(observed, truth)
    if isinstance(results, (RiskReport, RateReport)):
        return RiskViz()
    raise ValueError("Result type unknown")


def plot(
    results: Union[DenoiseResult, RiskReport, RateReport],
    observed: Optional[Signal] = None,
    truth: Optional[Signal] = None,
    block: bool = True,
    call_show: bool = True,
) -> Figure:
    """
    Plot a denoising or experiment result.

        Parameters
        ----------
        results: Union[DenoiseResult, RiskReport, RateReport]
            the result to plot
        observed: Signal
            (default= `None`) Noisy observations drawn under a :class:`DenoiseResult`.
        truth: Signal
            (default= `None`) True signal drawn under a :class:`DenoiseResult`.
        block: bool
            (default= `True`) Whether displaying the plot blocks subsequent code execution
        call_show: bool
            (default= 'True') Whether plt.show() will be called by default at the end of the
            plotting function. If `False`, the figure is only returned.
    """
    # pylint: disable = protected-access
    return get_viz(results, observed, truth)._matplotlib_plot(results, block, call_show)


def comparison_figure(panels: Sequence[tuple], summary: pd.DataFrame) -> Figure:
    """Noisy signals, both reconstructions and MSE bars; see :class:`ComparisonViz`"""
    return ComparisonViz().figure(panels, summary)


def save_svg(fig: Figure, path: Union[str, Path]):
    """Write ``fig`` as SVG with fixed element ids and no date stamp"""
    with mpl.rc_context(drcp):
        fig.savefig(path, format="svg", metadata={"Date": None})
