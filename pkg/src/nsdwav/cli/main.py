"""``nsdwav`` command line: denoise, bench, noisecheck and sample"""
# pylint: disable = wrong-import-position, too-many-arguments, too-many-locals
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import click
import matplotlib.pyplot as plt
import pandas as pd

from nsdwav.errors import ConfigError, DataError, InvariantViolation
from nsdwav.estimators import DenoiseConfig, Method, SigmaEstimator, WaveletDenoiser
from nsdwav.experiments import (
    RiskReport,
    combine_summaries,
    fit_rates,
    mse,
    replicate_fits,
    run_risk_experiment,
)
from nsdwav.model import SignalKind
from nsdwav.noise import IidGaussian, NsdPairMixture, run_noise_checks
from nsdwav.signals import SignalName, calibrate_snr, sample, test_function
from nsdwav.utils.io import (
    RunManifest,
    manifest_path,
    read_signal_csv,
    write_jsonl,
    write_signal_csv,
    write_table_csv,
)
from nsdwav.utils.rng import derive_seed
from nsdwav.version import __version__
from nsdwav.visualizations import comparison_figure, plot as plot_result, save_svg
from nsdwav.wavelets import basis_from_name

from .config import BenchConfig, load_config

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INVARIANT = 3

_METHODS = click.Choice([method.value for method in Method])
_SIGMA_ESTIMATORS = click.Choice([estimator.value for estimator in SigmaEstimator])
_SIGNALS = click.Choice([name.value for name in SignalName], case_sensitive=False)


def _replay(command: str, manifest: str) -> RunManifest:
    recorded = RunManifest.read(manifest)
    if recorded.command != command:
        raise ConfigError(
            f"{manifest} records a '{recorded.command}' run, not '{command}'"
        )
    logging.debug("Replaying %s", manifest)
    return recorded


def _resolve(command: str, manifest: Optional[str], options: Dict) -> Dict:
    """Options of this run, or of the replayed manifest"""
    if manifest is None:
        return options
    return dict(_replay(command, manifest).config)


def _require(options: Dict, *names: str):
    for name in names:
        if options.get(name) is None:
            raise click.UsageError(f"--{name.replace('_', '-')} is required")


def _save_figure(fig, path: Path) -> Path:
    save_svg(fig, path)
    plt.close(fig)
    return path


def _write_manifest(command: str, config: Dict, primary: Path, outputs: Dict, **extra):
    RunManifest(
        command=command,
        config=config,
        outputs={key: str(value) for key, value in outputs.items()},
        **extra,
    ).write(manifest_path(primary))


@click.group()
@click.version_option(__version__, prog_name="nsdwav")
def cli():
    """Wavelet thresholding for regression with negatively dependent noise"""


@cli.command("denoise")
@click.option("--in", "input_path", type=click.Path(dir_okay=False), help="CSV with x,y.")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV for x,fitted.")
@click.option("--method", type=_METHODS, default=Method.BLOCK.value, show_default=True)
@click.option("--wavelet", default="coif3", show_default=True, help="haar, dbK or coifK.")
@click.option("--s", "s", type=float, default=2.0, show_default=True, help="Smoothness s.")
@click.option("--sigma-estimator", type=_SIGMA_ESTIMATORS, default="local", show_default=True)
@click.option("--threshold", type=float, help="Fixed lambda0 (term) or lambda^2 (block).")
@click.option("--coarse-level", type=int, help="Fixed coarse level i0.")
@click.option("--block-threshold-factor", type=float, default=1.0, show_default=True)
@click.option("--truth", type=click.Path(dir_okay=False), help="CSV with the true x,y.")
@click.option("--plot", is_flag=True, help="Also write an SVG beside the output.")
@click.option("--manifest", type=click.Path(dir_okay=False), help="Replay a manifest.")
def denoise_command(manifest, **options):
    """Denoise one CSV sequence."""
    options = _resolve("denoise", manifest, options)
    _require(options, "input_path", "out")
    observed = read_signal_csv(options["input_path"])
    basis = basis_from_name(options["wavelet"])
    config = DenoiseConfig(
        method=Method(options["method"]),
        smoothness_s=options["s"],
        sigma_estimator=SigmaEstimator(options["sigma_estimator"]),
        threshold_override=options["threshold"],
        coarse_level_override=options["coarse_level"],
        block_threshold_factor=options["block_threshold_factor"],
    )
    result = WaveletDenoiser(basis, config).denoise(observed)
    out = Path(options["out"])
    write_signal_csv(out, result.fitted, "fitted")
    outputs = {"fitted": out}
    click.echo(
        f"{result.method.value}: levels {result.levels}, threshold "
        f"{result.threshold_used:.6g}, kept {result.kept_detail_count} of "
        f"{result.raw_tree.detail_count} detail coefficients"
    )
    truth = None
    if options["truth"] is not None:
        truth = read_signal_csv(options["truth"], SignalKind.TRUTH)
        click.echo(f"mse {mse(result.fitted, truth):.10g}")
    if options["plot"]:
        fig = plot_result(result, observed=observed, truth=truth, call_show=False)
        outputs["plot"] = _save_figure(fig, out.with_suffix(".svg"))
    _write_manifest(
        "denoise",
        options,
        out,
        outputs,
        inputs={"in": options["input_path"], "truth": options["truth"]},
    )
    return EXIT_OK


def _bench_reports(config: BenchConfig) -> List[RiskReport]:
    reports = []
    for experiment in config.experiments():
        logging.info("Running %s", experiment.signal_name)
        reports.append(run_risk_experiment(experiment))
    return reports


@cli.command("bench")
@click.argument("config_path", required=False, type=click.Path(dir_okay=False))
@click.option("--out", default="bench", show_default=True, help="Output path prefix.")
@click.option("--replicates", type=int, help="Override the configured replicates.")
@click.option("--seed", type=int, help="Override the configured master seed.")
@click.option("--plot", is_flag=True, help="Also write SVG figures.")
@click.option("--manifest", type=click.Path(dir_okay=False), help="Replay a manifest.")
def bench_command(config_path, out, replicates, seed, plot, manifest):
    """Run the risk experiments of a configuration file."""
    if manifest is not None:
        recorded = _replay("bench", manifest)
        config = BenchConfig(dict(recorded.config))
        out, plot = recorded.options.get("out", "bench"), recorded.options.get("plot", False)
    else:
        if config_path is None:
            raise click.UsageError("a configuration file or --manifest is required")
        config = load_config(config_path).override(replicates=replicates, seed=seed)
    prefix = Path(out)
    reports = _bench_reports(config)
    summary = combine_summaries(reports)
    outputs = {
        "summary": prefix.with_name(prefix.name + ".csv"),
        "records": prefix.with_name(prefix.name + ".jsonl"),
    }
    write_table_csv(outputs["summary"], summary)
    write_jsonl(outputs["records"], summary)
    click.echo(summary.to_string(index=False))
    rate_tables = []
    for report in reports:
        if len(report.config.n_values) >= 4:
            rates = fit_rates(report)
            table = rates.as_dataframe().copy()
            table.insert(0, "signal", report.config.signal_name)
            rate_tables.append(table)
            if plot:
                outputs[f"rates_plot_{report.config.signal_name}"] = _save_figure(
                    plot_result(rates, call_show=False),
                    prefix.with_name(f"{prefix.name}.{report.config.signal_name}.rates.svg"),
                )
    if rate_tables:
        rates_frame = pd.concat(rate_tables, ignore_index=True)
        outputs["rates"] = prefix.with_name(prefix.name + ".rates.csv")
        write_table_csv(outputs["rates"], rates_frame)
        click.echo(rates_frame.to_string(index=False))
    if plot:
        panels = [
            (r.config.signal_name, replicate_fits(r.config, r.config.n_values[0]))
            for r in reports
        ]
        outputs["plot"] = _save_figure(
            comparison_figure(panels, summary), prefix.with_name(prefix.name + ".svg")
        )
    resolved = config.resolved()
    _write_manifest(
        "bench",
        resolved,
        outputs["summary"],
        outputs,
        inputs={"config": config_path},
        options={"out": str(out), "plot": bool(plot)},
        seed=resolved["seed"],
    )
    return EXIT_OK


def _noise_model(options: Dict):
    if options["iid"]:
        return IidGaussian()
    return NsdPairMixture(
        options["rho0"], options["sigma1sq"], options["sigma2sq"], not options["raw"]
    )


@cli.command("noisecheck")
@click.option("--rho0", type=float, default=-0.5, show_default=True)
@click.option("--sigma1sq", type=float, default=1.0, show_default=True)
@click.option("--sigma2sq", type=float, default=9.0, show_default=True)
@click.option("--raw", is_flag=True, help="Keep the pair variances instead of standardizing.")
@click.option("--iid", is_flag=True, help="Check i.i.d. Gaussian noise instead.")
@click.option("--n", "n", type=int, default=1024, show_default=True)
@click.option("--replicates", type=int, default=10_000, show_default=True)
@click.option("--umax", type=int, default=4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="JSON-lines report.")
@click.option("--manifest", type=click.Path(dir_okay=False), help="Replay a manifest.")
def noisecheck_command(manifest, **options):
    """Monte Carlo checks of the noise model; exits 0 iff all pass."""
    options = _resolve("noisecheck", manifest, options)
    model = _noise_model(options)
    report = run_noise_checks(
        model,
        n=options["n"],
        replicates=options["replicates"],
        u_max=options["umax"],
        seed=options["seed"],
    )
    frame = report.as_dataframe()
    click.echo(frame.to_string(index=False))
    if options["out"] is not None:
        out = Path(options["out"])
        write_jsonl(out, frame)
        _write_manifest("noisecheck", options, out, {"report": out}, seed=options["seed"])
    click.echo("all checks passed" if report.all_passed else "some checks FAILED")
    return EXIT_OK if report.all_passed else EXIT_INVARIANT


@cli.command("sample")
@click.option("--signal", type=_SIGNALS, required=False)
@click.option("--n", "n", type=int, default=1024, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@click.option("--snr", type=float, help="Add NSD noise at this signal-to-noise ratio.")
@click.option("--rho0", type=float, default=-0.5, show_default=True)
@click.option("--sigma1sq", type=float, default=1.0, show_default=True)
@click.option("--sigma2sq", type=float, default=9.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--manifest", type=click.Path(dir_okay=False), help="Replay a manifest.")
def sample_command(manifest, **options):
    """Write a test signal, optionally with calibrated noise, as x,y CSV."""
    options = _resolve("sample", manifest, options)
    _require(options, "signal", "out")
    truth = sample(test_function(options["signal"]), options["n"])
    signal = truth
    if options["snr"] is not None:
        model = NsdPairMixture(options["rho0"], options["sigma1sq"], options["sigma2sq"])
        sigma = calibrate_snr(truth, options["snr"])
        noise = model.generate(truth.n, derive_seed(options["seed"], 0))
        signal = truth.with_samples(truth.samples + sigma * noise, SignalKind.OBSERVED)
    out = Path(options["out"])
    write_signal_csv(out, signal, "y")
    _write_manifest("sample", options, out, {"signal": out}, seed=options["seed"])
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and map errors onto exit statuses.

    0 success, 1 usage or configuration error, 2 data error, 3 invariant violation or a
    failed noise check.
    """
    try:
        status = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="nsdwav",
            standalone_mode=False,
        )
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ConfigError as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_USAGE
    except InvariantViolation as exc:
        click.echo(f"Internal error: {exc}", err=True)
        return EXIT_INVARIANT
    except (DataError, ValueError) as exc:
        click.echo(f"Data error: {exc}", err=True)
        return EXIT_DATA
    return status if isinstance(status, int) else EXIT_OK


def run():
    """Console-script entry point"""
    sys.exit(main())
