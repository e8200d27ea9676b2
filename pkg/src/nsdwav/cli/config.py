"""Flat ``key = value`` experiment configuration files.

Blank lines and text after ``#`` are ignored. Lists are comma separated. Recognized keys:

================================  ===============================================  =========
key                               meaning                                          default
================================  ===============================================  =========
``signal``                        test functions, e.g. ``spikes, corner``          required
``n``                             sample sizes, powers of two                      ``1024``
``snr``                           signal-to-noise ratio, ``inf`` for no noise      ``4``
``noise``                         ``nsd`` (Gaussian pairs) or ``iid``              ``nsd``
``rho0``                          within-pair correlation, ``-1 < rho0 < 0``       ``-0.5``
``sigma1_sq``, ``sigma2_sq``      pair variances                                   ``1, 9``
``standardize``                   rescale pairs to unit variance                   ``true``
``methods``                       ``term``, ``block`` or both                      both
``s``                             smoothness ``s`` fixing the coarse level         ``2``
``sigma_estimator``               ``local`` or ``global`` (block rule)             ``local``
``block_threshold_factor``        ``lambda*`` in ``lambda^2 = lambda* sigma^2/n``  ``1``
``threshold``                     fixed ``lambda0`` or ``lambda^2``                unset
``coarse_level``                  fixed ``i0``                                     unset
``wavelet``                       ``haar``, ``dbK`` or ``coifK``                   ``coif3``
``replicates``                    noise replicates per sample size                 ``100``
``seed``                          master seed                                      ``0``
``besov``                         ``p, q, M`` of the assumed Besov ball            unset
================================  ===============================================  =========
"""
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from nsdwav.errors import ConfigError
from nsdwav.estimators import DenoiseConfig, Method, SigmaEstimator
from nsdwav.experiments import ExperimentConfig
from nsdwav.noise import IidGaussian, NoiseModel, NsdPairMixture
from nsdwav.signals import SignalName


def _float(text: str) -> float:
    value = float(text)
    if math.isnan(value):
        raise ValueError("NaN is not allowed")
    return value


def _int(text: str) -> int:
    return int(text)


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected true or false, got {text!r}")


def _list(parse: Callable) -> Callable:
    def parse_list(text: str):
        items = [item.strip() for item in text.split(",")]
        if not all(items):
            raise ValueError("empty list entry")
        return tuple(parse(item) for item in items)

    return parse_list


def _choice(*choices: str) -> Callable:
    def parse_choice(text: str) -> str:
        if text.lower() not in choices:
            raise ValueError(f"expected one of {', '.join(choices)}, got {text!r}")
        return text.lower()

    return parse_choice


_PARSERS: Dict[str, Callable] = {
    "signal": _list(_choice(*(name.value for name in SignalName))),
    "n": _list(_int),
    "snr": _float,
    "noise": _choice("nsd", "iid"),
    "rho0": _float,
    "sigma1_sq": _float,
    "sigma2_sq": _float,
    "standardize": _bool,
    "methods": _list(_choice(*(method.value for method in Method))),
    "s": _float,
    "sigma_estimator": _choice(*(estimator.value for estimator in SigmaEstimator)),
    "block_threshold_factor": _float,
    "threshold": _float,
    "coarse_level": _int,
    "wavelet": str,
    "replicates": _int,
    "seed": _int,
    "besov": _list(_float),
}

_DEFAULTS = {
    "n": (1024,),
    "snr": 4.0,
    "noise": "nsd",
    "rho0": -0.5,
    "sigma1_sq": 1.0,
    "sigma2_sq": 9.0,
    "standardize": True,
    "methods": ("term", "block"),
    "s": 2.0,
    "sigma_estimator": "local",
    "block_threshold_factor": 1.0,
    "threshold": None,
    "coarse_level": None,
    "wavelet": "coif3",
    "replicates": 100,
    "seed": 0,
    "besov": None,
}


@dataclass
class BenchConfig:
    """A parsed configuration file: resolved settings plus the line of each key"""

    values: Dict[str, object]
    lines: Dict[str, Optional[int]] = field(default_factory=dict)

    def resolved(self) -> Dict[str, object]:
        """Every key with defaults materialized"""
        return {**_DEFAULTS, **self.values}

    def override(self, **overrides) -> "BenchConfig":
        """Replace keys, ignoring ``None`` values"""
        values = dict(self.values)
        lines = dict(self.lines)
        for key, value in overrides.items():
            if value is not None:
                values[key] = value
                lines[key] = None
        return BenchConfig(values, lines)

    def noise_model(self) -> NoiseModel:
        """The configured noise law"""
        values = self.resolved()
        with self._blame("rho0", "sigma1_sq", "sigma2_sq"):
            if values["noise"] == "iid":
                return IidGaussian()
            return NsdPairMixture(
                values["rho0"],
                values["sigma1_sq"],
                values["sigma2_sq"],
                values["standardize"],
            )

    def experiments(self) -> List[ExperimentConfig]:
        """One :class:`ExperimentConfig` per configured signal"""
        values = self.resolved()
        if "signal" not in values:
            raise ConfigError("missing required key", field="signal")
        noise = self.noise_model()
        with self._blame("s", "threshold", "coarse_level", "block_threshold_factor"):
            denoise = DenoiseConfig(
                smoothness_s=values["s"],
                sigma_estimator=SigmaEstimator(values["sigma_estimator"]),
                threshold_override=values["threshold"],
                coarse_level_override=values["coarse_level"],
                block_threshold_factor=values["block_threshold_factor"],
            )
        with self._blame("wavelet", "n", "snr", "methods", "replicates", "besov"):
            first = ExperimentConfig(
                signal=values["signal"][0],
                n_values=values["n"],
                snr=values["snr"],
                noise=noise,
                methods=tuple(Method(m) for m in values["methods"]),
                denoise=denoise,
                replicates=values["replicates"],
                master_seed=values["seed"],
                wavelet=values["wavelet"],
                besov=values["besov"],
            )
        return [first.with_signal(name) for name in values["signal"]]

    @contextmanager
    def _blame(self, *keys: str):
        """Re-raise a :class:`ConfigError` with the file line of the offending key"""
        try:
            yield
        except ConfigError as exc:
            if exc.line is not None:
                raise
            key = _FIELD_KEYS.get(exc.field, exc.field)
            if key not in self.lines:
                key = next((k for k in keys if k in self.lines), None)
            line = self.lines.get(key) if key else None
            if line is None:
                raise
            raise type(exc)(exc.args[0], line=line) from exc


# field names used by library errors that differ from the file keys
_FIELD_KEYS = {
    "smoothness_s": "s",
    "threshold_override": "threshold",
    "coarse_level_override": "coarse_level",
    "n_values": "n",
    "master_seed": "seed",
}


def parse_config(text: str) -> BenchConfig:
    """Parse configuration text.

    Raises
    ------
    ConfigError
        Naming the line and key of any malformed, unknown or repeated entry.
    """
    values: Dict[str, object] = {}
    lines: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        key = _FIELD_KEYS.get(key, key)
        if key not in _PARSERS:
            raise ConfigError(
                f"unknown key (known: {', '.join(_PARSERS)})", line=number, field=key
            )
        if key in values:
            raise ConfigError(
                f"repeated key, first set on line {lines[key]}", line=number, field=key
            )
        if not value:
            raise ConfigError("missing value", line=number, field=key)
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(str(exc), line=number, field=key) from exc
        lines[key] = number
    return BenchConfig(values, lines)


def load_config(path: Union[str, Path]) -> BenchConfig:
    """Read and parse a configuration file"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)
