"""CSV, JSON-lines and manifest input/output"""
import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from nsdwav.errors import DataError
from nsdwav.model import Signal, SignalKind
from nsdwav.version import __version__

PathType = Union[str, Path]

# locale-independent: '.' decimals, '\n' line endings, 17 significant digits
CSV_OPTIONS = {"index": False, "float_format": "%.17g", "lineterminator": "\n"}


def read_signal_csv(path: PathType, kind: SignalKind = SignalKind.OBSERVED) -> Signal:
    """Read a two-column ``x,y`` CSV with a header row.

    Raises
    ------
    DataError
        If the file is empty or malformed, has a length that is not a power of two or
        an ``x`` column that is not strictly increasing.
    """
    try:
        frame = pd.read_csv(path, dtype=float)
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"{path}: file is empty") from exc
    except (pd.errors.ParserError, ValueError) as exc:
        raise DataError(f"{path}: malformed CSV ({exc})") from exc
    except OSError as exc:
        raise DataError(f"{path}: cannot read ({exc})") from exc
    if frame.shape[1] != 2:
        raise DataError(f"{path}: expected two columns (x, y), got {list(frame.columns)}")
    if frame.empty:
        raise DataError(f"{path}: no samples")
    x = frame.iloc[:, 0].to_numpy()
    if not np.all(np.isfinite(frame.to_numpy())):
        raise DataError(f"{path}: non-numeric or missing values")
    if np.any(np.diff(x) <= 0):
        raise DataError(f"{path}: x must be strictly increasing")
    try:
        signal = Signal(frame.iloc[:, 1].to_numpy(), kind)
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from exc
    logging.debug("Read %d samples from %s", signal.n, path)
    return signal


def write_signal_csv(path: PathType, signal: Signal, value_name: str = "y"):
    """Write ``(x, value_name)`` rows"""
    signal.as_dataframe(value_name).to_csv(path, **CSV_OPTIONS)


def write_table_csv(path: PathType, frame: pd.DataFrame):
    """Write any result table with the fixed CSV options"""
    frame.to_csv(path, **CSV_OPTIONS)


def write_jsonl(path: PathType, frame: pd.DataFrame):
    """One JSON record per row"""
    text = frame.to_json(orient="records", lines=True, double_precision=15)
    Path(path).write_text(text.rstrip("\n") + "\n", encoding="utf-8")


@dataclass
class RunManifest:
    """Everything needed to replay a CLI run.

    ``config`` holds the resolved settings with every default materialized;
    ``options`` holds command-line switches that only shape the outputs.
    """

    command: str
    config: Dict
    inputs: Dict[str, Optional[str]] = field(default_factory=dict)
    outputs: Dict[str, Optional[str]] = field(default_factory=dict)
    options: Dict = field(default_factory=dict)
    seed: Optional[int] = None
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def write(self, path: PathType):
        """Write the manifest as indented JSON"""
        Path(path).write_text(
            json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    @staticmethod
    def read(path: PathType) -> "RunManifest":
        """Load a manifest written by :meth:`write`"""
        try:
            content = json.loads(Path(path).read_text(encoding="utf-8"))
            return RunManifest(**content)
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise DataError(f"{path}: not a run manifest ({exc})") from exc


def manifest_path(output: PathType) -> Path:
    """The manifest written beside ``output``: ``<output>.manifest.json``"""
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")
