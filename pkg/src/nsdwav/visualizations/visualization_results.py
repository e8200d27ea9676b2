"""Generic class for visualization results"""
# pylint: disable = too-few-public-methods
from abc import ABC, abstractmethod

from matplotlib.figure import Figure


class VisualizationResults(ABC):
    """Abstract class for visualizations of nsdwav results"""

    @abstractmethod
    def _matplotlib_plot(self, results, block: bool = True, call_show: bool = True) -> Figure:
        """Plot the result in matplotlib and return the figure"""
