"""Generic class for denoising, check and experiment results"""
from abc import ABC, abstractmethod

import pandas as pd
from pandas.io.formats.style import Styler


class WaveletResults(ABC):
    """Abstract class for nsdwav result objects"""

    @abstractmethod
    def as_dataframe(self) -> pd.DataFrame:
        """Display the result as a dataframe"""

    def as_html(self) -> Styler:
        """Visualise the styled dataframe"""
        return self.as_dataframe().style


# pylint: disable=too-few-public-methods
class PassFailResults(WaveletResults):
    """Abstract class for results made of pass/fail checks"""

    @property
    @abstractmethod
    def all_passed(self) -> bool:
        """Whether every check passed"""

    def as_html(self) -> Styler:
        """Styled dataframe with failing rows highlighted"""
        from nsdwav.utils._visualisation import (  # pylint: disable=import-outside-toplevel
            DEFAULT_STYLE as ds,
        )

        def _colour(row):
            colour = (
                ds["positive_primary_colour_faded"]
                if row["passed"]
                else ds["negative_primary_colour_faded"]
            )
            return [f"background-color:{colour}"] * len(row)

        return self.as_dataframe().style.apply(_colour, axis=1)
