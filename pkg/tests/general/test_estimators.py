# pylint: disable=import-error, wrong-import-position, wrong-import-order, invalid-name
"""Thresholding estimator test suite"""
import math

import pytest

from common import *

from nsdwav.errors import BlockOutOfRange, ConfigError, DataError, SignalTooShort
from nsdwav.estimators import (
    DenoiseConfig,
    DenoiseResult,
    Method,
    SigmaEstimator,
    WaveletDenoiser,
    block_coarse_level,
    block_energy,
    block_length,
    block_partition,
    block_threshold_apply,
    denoise,
    empirical_tree,
    local_variances,
    reconstruct,
    sigma_hat_first_difference,
    sigma_hat_local,
    term_level_cutoff,
    term_threshold_apply,
    universal_threshold,
)
from nsdwav.model import CoefficientTree
from nsdwav.noise import IidGaussian, NsdPairMixture
from nsdwav.signals import calibrate_snr, sample, test_function
from nsdwav.wavelets import basis_from_name, make_basis


def toy_tree():
    """Levels 0..2 of an 8-sample tree"""
    return CoefficientTree(
        0,
        3,
        np.array([10.0]),
        (np.array([0.5]), np.array([-0.5, 0.6]), np.array([1.0, 2.0, 3.0, 4.0])),
    )


def test_schedule_constants():
    """Thresholds and levels for n = 1024"""
    assert universal_threshold(1.0, 1024) == pytest.approx(0.116353, abs=1e-6)
    assert term_level_cutoff(1024) == 8
    assert block_coarse_level(1024, 2) == 2
    assert block_length(1024) == 7
    assert block_length(2) == 1
    assert block_length(4) == 1


@pytest.mark.parametrize("finest_level", range(2, 21))
def test_term_cutoff_brackets_ratio(finest_level):
    """2^(i1 - 1) < n / ln n <= 2^i1"""
    n = 2**finest_level
    cutoff = term_level_cutoff(n)
    ratio = n / math.log(n)
    assert 2 ** (cutoff - 1) < ratio <= 2**cutoff


@pytest.mark.parametrize("finest_level", range(1, 21))
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.0, 7.5])
def test_block_coarse_level_brackets_root(finest_level, s):
    """2^(i0 - 1) < n^(1/(2s+1)) <= 2^i0"""
    n = 2**finest_level
    coarse_level = block_coarse_level(n, s)
    root = n ** (1.0 / (2.0 * s + 1.0))
    assert 2 ** (coarse_level - 1) < root * (1 + 1e-12)
    assert root <= 2**coarse_level * (1 + 1e-12)
    assert 0 <= coarse_level <= finest_level


def test_block_coarse_level_exact_powers():
    """Exact powers resolve to the lower level and infinite smoothness to level 0"""
    assert block_coarse_level(2**10, 2) == 2
    assert block_coarse_level(2**15, 2) == 3
    assert block_coarse_level(2**16, 2) == 4
    assert block_coarse_level(2**10, math.inf) == 0


def test_schedule_validation():
    """Invalid sample sizes and smoothness are rejected"""
    with pytest.raises(ValueError):
        universal_threshold(1.0, 1)
    with pytest.raises(ValueError):
        term_level_cutoff(2)
    with pytest.raises(DataError):
        term_level_cutoff(1000)
    with pytest.raises(ValueError):
        block_coarse_level(1024, 0.0)


def test_block_partition():
    """Blocks are consecutive and the last one may be short"""
    assert block_partition(3, 3) == [range(0, 3), range(3, 6), range(6, 8)]
    assert block_partition(0, 7) == [range(0, 1)]
    with pytest.raises(BlockOutOfRange):
        block_partition(2, 0)


def test_block_energy_divides_by_nominal_length():
    """A ragged final block still divides by l"""
    tree = toy_tree()
    assert block_energy(tree, 2, range(0, 3), 3) == pytest.approx(14.0 / 3.0)
    assert block_energy(tree, 2, range(3, 4), 3) == pytest.approx(16.0 / 3.0)
    with pytest.raises(BlockOutOfRange):
        block_energy(tree, 2, range(3, 5), 3)


def test_term_threshold_is_strict():
    """A coefficient equal to the threshold is removed"""
    kept = term_threshold_apply(toy_tree(), 0.5, cutoff=2)
    assert np.allclose(kept.detail(0), [0.0])
    assert np.allclose(kept.detail(1), [0.0, 0.6])
    assert np.allclose(kept.detail(2), [1.0, 2.0, 3.0, 4.0])
    assert np.allclose(kept.approx, [10.0])


def test_term_threshold_cutoff():
    """Levels above the cutoff are zeroed whatever their size"""
    kept = term_threshold_apply(toy_tree(), 0.1, cutoff=1)
    assert np.allclose(kept.detail(1), [-0.5, 0.6])
    assert np.allclose(kept.detail(2), 0.0)


def test_block_threshold_is_strict():
    """Blocks whose mean energy equals lambda^2 are removed"""
    tree = toy_tree()
    kept = block_threshold_apply(tree, 14.0 / 3.0, 3)
    assert np.allclose(kept.detail(2), [0.0, 0.0, 0.0, 4.0])
    kept = block_threshold_apply(tree, {0: [0.0], 1: [1.0], 2: [1.0, 6.0]}, 3)
    assert np.allclose(kept.detail(0), [0.5])
    assert np.allclose(kept.detail(1), [0.0, 0.0])
    assert np.allclose(kept.detail(2), [1.0, 2.0, 3.0, 0.0])
    with pytest.raises(BlockOutOfRange):
        block_threshold_apply(tree, {0: [0.0], 1: [1.0], 2: [1.0]}, 3)


def test_first_difference_variance_oracle():
    """sum of squared differences over 2(n - 1)"""
    assert sigma_hat_first_difference([0.0, 1.0, 0.0, 1.0]) == pytest.approx(0.5)
    with pytest.raises(DataError):
        sigma_hat_first_difference([1.0])


def test_first_difference_variance_consistency():
    """Unbiased for i.i.d. noise, 1 - rho0 / 2 for negatively correlated pairs"""
    n = 2**16
    iid = IidGaussian().generate(n, seed=3)
    assert sigma_hat_first_difference(iid) == pytest.approx(1.0, abs=0.05)
    pairs = NsdPairMixture(rho0=-0.5).generate(n, seed=3)
    assert sigma_hat_first_difference(pairs) == pytest.approx(1.25, abs=0.05)


def test_local_variances_track_heteroscedastic_noise():
    """Blocks in the noisier half of the grid see the larger variance"""
    n = 4096
    scale = np.where(np.arange(n) < n // 2, 1.0, 3.0)
    observed = scale * IidGaussian().generate(n, seed=4)
    variances = local_variances(observed, 6, block_length(n))
    assert variances.shape == (8,)
    assert np.all(variances[:4] < 3.0)
    assert np.all(variances[4:] > 4.0)
    assert sigma_hat_local(observed, 6, 7, block_length(n)) == pytest.approx(variances[7])


def test_local_variance_block_range():
    """Blocks outside the level are rejected"""
    observed = random_samples(64)
    with pytest.raises(BlockOutOfRange):
        sigma_hat_local(observed, 3, 3, 3)
    with pytest.raises(BlockOutOfRange):
        sigma_hat_local(observed, 7, 0, 3)
    with pytest.raises(BlockOutOfRange):
        local_variances(observed, 7, 3)


def test_empirical_tree_round_trip():
    """reconstruct undoes empirical_tree"""
    basis = basis_from_name("coif3")
    signal = random_signal(256, seed=5)
    tree = empirical_tree(signal, basis, 2)
    assert np.isclose(tree.energy(), np.mean(signal.samples**2))
    assert np.allclose(reconstruct(tree, basis).samples, signal.samples)


def brute_force_fit(samples, keep):
    """sqrt(n) W^T (keep * W Y / sqrt(n)) with the explicit Haar matrix"""
    n = samples.size
    matrix = haar_matrix(n)
    coefficients = matrix @ samples / np.sqrt(n)
    return np.sqrt(n) * matrix.T @ np.where(keep(coefficients), coefficients, 0.0)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_term_by_term_matches_brute_force(n):
    """Term-by-term Haar fit from the explicit matrix"""
    samples = random_samples(n, seed=n) + np.arange(n)
    levels = haar_levels(n)
    lambda0 = 0.4
    cutoff = term_level_cutoff(n)

    def keep(coefficients):
        return (levels < 0) | ((np.abs(coefficients) > lambda0) & (levels <= cutoff))

    result = WaveletDenoiser(
        make_basis("haar"),
        method=Method.TERM_BY_TERM,
        threshold_override=lambda0,
        coarse_level_override=0,
    ).denoise(samples)
    assert np.allclose(result.fitted.samples, brute_force_fit(samples, keep))
    assert result.levels == (0, cutoff)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_block_matches_brute_force(n):
    """Block Haar fit from the explicit matrix, blocks of l = round(ln n)"""
    samples = random_samples(n, seed=n + 1) * 2.0 + np.arange(n)
    levels = haar_levels(n)
    length = block_length(n)
    lambda_sq = 0.05

    def keep(coefficients):
        kept = levels < 0
        for level in range(int(np.log2(n))):
            index = np.flatnonzero(levels == level)
            for start in range(0, index.size, length):
                block = index[start : start + length]
                if np.sum(coefficients[block] ** 2) / length > lambda_sq:
                    kept[block] = True
        return kept

    result = WaveletDenoiser(
        make_basis("haar"),
        method=Method.BLOCK,
        threshold_override=lambda_sq,
        coarse_level_override=0,
    ).denoise(samples)
    assert np.allclose(result.fitted.samples, brute_force_fit(samples, keep))
    assert result.levels == (0, int(np.log2(n)))


def spikes_observations(n=1024, seed=6):
    """Spikes plus NSD noise at SNR 4"""
    truth = sample(test_function("spikes"), n)
    noise = NsdPairMixture().generate(n, seed=seed)
    return truth, truth.samples + calibrate_snr(truth, 4.0) * noise


@pytest.mark.parametrize("method", [Method.TERM_BY_TERM, Method.BLOCK])
def test_denoising_reduces_error(method):
    """Both rules beat the raw observations on Spikes"""
    truth, observed = spikes_observations()
    config = DenoiseConfig(method=method, block_threshold_factor=4.50524)
    result = denoise(observed, basis_from_name("coif3"), config)
    raw_error = np.mean((observed - truth.samples) ** 2)
    fitted_error = np.mean((result.fitted.samples - truth.samples) ** 2)
    assert fitted_error < raw_error / 2


@pytest.mark.parametrize("method", [Method.TERM_BY_TERM, Method.BLOCK])
def test_kept_tree_only_zeroes(method):
    """Kept coefficients are either unchanged or zero; the approximation is untouched"""
    _, observed = spikes_observations(seed=7)
    result = WaveletDenoiser(basis_from_name("db4"), method=method).denoise(observed)
    raw, kept = result.raw_tree.flatten(), result.kept_tree.flatten()
    assert np.all((kept == raw) | (kept == 0.0))
    assert np.allclose(result.kept_tree.approx, result.raw_tree.approx)
    assert result.kept_detail_count == np.count_nonzero(
        np.concatenate(result.kept_tree.details)
    )
    frame = result.as_dataframe()
    assert list(frame.columns) == ["level", "coefficients", "kept", "raw_energy", "kept_energy"]
    assert frame["coefficients"].sum() == result.raw_tree.detail_count
    assert frame["kept"].sum() == result.kept_detail_count
    assert isinstance(result, DenoiseResult)


@pytest.mark.parametrize("method", [Method.TERM_BY_TERM, Method.BLOCK])
def test_fixed_threshold_is_idempotent(method):
    """Denoising a fit again with the same fixed threshold changes nothing"""
    _, observed = spikes_observations(seed=8)
    first = WaveletDenoiser(
        basis_from_name("coif3"), method=method, threshold_override=0.05
    ).denoise(observed)
    second = WaveletDenoiser(
        basis_from_name("coif3"), method=method, threshold_override=0.05
    ).denoise(first.fitted)
    assert np.allclose(second.fitted.samples, first.fitted.samples, atol=1e-9)


@pytest.mark.parametrize("method", [Method.TERM_BY_TERM, Method.BLOCK])
@pytest.mark.parametrize("estimator", [SigmaEstimator.LOCAL_BLOCK, SigmaEstimator.FIRST_DIFFERENCE])
def test_scale_equivariance(method, estimator):
    """Scaling the data by 2 scales the fit by 2"""
    _, observed = spikes_observations(seed=9)
    denoiser = WaveletDenoiser(
        basis_from_name("coif3"), method=method, sigma_estimator=estimator
    )
    single = denoiser.denoise(observed)
    double = denoiser.denoise(2.0 * observed)
    assert np.allclose(double.fitted.samples, 2.0 * single.fitted.samples)
    assert double.kept_detail_count == single.kept_detail_count


def test_block_threshold_factor_scales_threshold():
    """lambda^2 is proportional to the configured factor"""
    _, observed = spikes_observations(seed=10)
    basis = basis_from_name("coif3")
    plain = WaveletDenoiser(basis, method=Method.BLOCK).denoise(observed)
    scaled = WaveletDenoiser(
        basis, method=Method.BLOCK, block_threshold_factor=4.50524
    ).denoise(observed)
    assert scaled.threshold_used == pytest.approx(4.50524 * plain.threshold_used)
    assert scaled.kept_detail_count <= plain.kept_detail_count


def test_term_result_reports_universal_threshold():
    """threshold_used is sqrt(2 sigma^2 ln n / n) with the first-difference sigma^2"""
    _, observed = spikes_observations(seed=11)
    result = WaveletDenoiser(basis_from_name("coif3"), method="term").denoise(observed)
    sigma_sq = sigma_hat_first_difference(observed)
    assert result.sigma_hat == pytest.approx(sigma_sq)
    assert result.threshold_used == pytest.approx(universal_threshold(sigma_sq, 1024))
    assert result.levels == (2, 8)


def test_denoise_validation():
    """Short signals and inconsistent configurations are rejected"""
    basis = make_basis("haar")
    with pytest.raises(SignalTooShort):
        denoise([1.0, 2.0], basis)
    with pytest.raises(ConfigError):
        DenoiseConfig(smoothness_s=0.0)
    with pytest.raises(ConfigError):
        DenoiseConfig(threshold_override=-1.0)
    with pytest.raises(ConfigError):
        DenoiseConfig(block_threshold_factor=0.0)
    with pytest.raises(ConfigError):
        denoise(random_samples(16), basis, DenoiseConfig(coarse_level_override=5))
    with pytest.raises(ValueError):
        DenoiseConfig(method="median")


@pytest.mark.parametrize("documented", [empirical_tree, WaveletDenoiser.denoise])
def test_signal_docstrings_are_formatted(documented):
    """Decorated docstrings list the accepted signal types and keep no placeholders"""
    assert ":class:`numpy.ndarray`" in documented.__doc__
    assert "{}" not in documented.__doc__
    assert "Y / sqrt(n)" in empirical_tree.__doc__


def kept_mask(tree):
    """Boolean mask of nonzero detail coefficients, coarse to fine"""
    return np.concatenate(tree.details) != 0.0


def test_term_kept_set_shrinks_with_threshold():
    """A larger lambda keeps a subset of the coefficients kept by a smaller one"""
    _, observed = spikes_observations(seed=9)
    tree = empirical_tree(observed, basis_from_name("db4"), 2)
    cutoff = term_level_cutoff(1024)
    previous = kept_mask(term_threshold_apply(tree, 0.0, cutoff))
    for lambda0 in [0.01, 0.05, 0.1, 0.2, 0.5, 1.0, np.inf]:
        current = kept_mask(term_threshold_apply(tree, lambda0, cutoff))
        assert np.all(previous | ~current)
        previous = current
    assert not previous.any()


def test_block_kept_set_shrinks_with_threshold():
    """A larger lambda^2 keeps a subset of the blocks kept by a smaller one"""
    _, observed = spikes_observations(seed=10)
    tree = empirical_tree(observed, basis_from_name("db4"), 2)
    length = block_length(1024)
    previous = kept_mask(block_threshold_apply(tree, 0.0, length))
    for lambda_sq in [1e-4, 1e-3, 1e-2, 0.1, 1.0, np.inf]:
        current = kept_mask(block_threshold_apply(tree, lambda_sq, length))
        assert np.all(previous | ~current)
        previous = current
    assert not previous.any()


def test_local_variance_agrees_with_global_under_homoscedastic_noise():
    """Averaged over replicates, local and global estimates differ by under 3 standard errors"""
    n, level, replicates = 4096, 6, 100
    length = block_length(n)
    differences = []
    for seed in range(replicates):
        observed = IidGaussian().generate(n, seed=seed)
        differences.append(
            local_variances(observed, level, length) - sigma_hat_first_difference(observed)
        )
    differences = np.array(differences)
    per_replicate = differences.mean(axis=1)
    std_error = np.std(per_replicate, ddof=1) / np.sqrt(replicates)
    assert abs(np.mean(per_replicate)) <= 3 * std_error
    for block in range(differences.shape[1]):
        column = differences[:, block]
        assert abs(np.mean(column)) <= 4 * np.std(column, ddof=1) / np.sqrt(replicates)


@pytest.mark.parametrize("name", ["db2", "db4", "coif3"])
def test_smooth_signal_has_less_fine_detail_than_noise(name):
    """A noiseless smooth signal leaves less finest-level energy than white noise of equal variance"""
    n = 1024
    basis = basis_from_name(name)
    truth = sample(test_function("smoothsine"), n)
    noise = np.std(truth.samples) * IidGaussian().generate(n, seed=11)
    finest = truth.finest_level - 1
    smooth_energy = np.sum(empirical_tree(truth, basis, 2).detail(finest) ** 2)
    noise_energy = np.sum(empirical_tree(noise, basis, 2).detail(finest) ** 2)
    assert smooth_energy <= noise_energy
    assert smooth_energy < 1e-3 * noise_energy
